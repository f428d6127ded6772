#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace giry {

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator. Used for intermediate sums.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

Rational make_rational(std::int64_t num, std::int64_t den);

/// Text form "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& r);

/// Parses "num/den" or "num". Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/**
 * An exact rational in the unit interval [0,1].
 *
 * Every probability, function value and convex-combination weight in the
 * library is a UnitRational. Construction from a value outside [0,1] throws
 * std::domain_error; equality is exact.
 */
class UnitRational {
 public:
  UnitRational() = default;
  explicit UnitRational(Rational value);
  UnitRational(std::int64_t num, std::int64_t den);

  static UnitRational zero() { return {}; }
  static UnitRational one() { return UnitRational(Rational(1)); }

  const Rational& value() const noexcept { return value_; }
  BigInt num() const { return boost::multiprecision::numerator(value_); }
  BigInt den() const { return boost::multiprecision::denominator(value_); }

  /// 1 - r.
  UnitRational complement() const;

  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }

  friend bool operator==(const UnitRational& a, const UnitRational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const UnitRational& a, const UnitRational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Rational value_{0};
};

/// Product of two unit rationals; [0,1] is closed under multiplication.
UnitRational operator*(const UnitRational& a, const UnitRational& b);

/// The convex structure of I: r*u + (1-r)*v.
UnitRational cvx_combine(const UnitRational& u, const UnitRational& v, const UnitRational& r);

std::string to_string(const UnitRational& u);
UnitRational parse_unit(std::string_view text);

}  // namespace giry
