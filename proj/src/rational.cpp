#include "giry/rational.hpp"

#include <stdexcept>

namespace giry {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

std::string to_string(const Rational& r) {
  const BigInt n = boost::multiprecision::numerator(r);
  const BigInt d = boost::multiprecision::denominator(r);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') {
      throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
  }
  return BigInt(std::string(text));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const BigInt num = parse_integer(text.substr(0, slash), text);
  const BigInt den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

UnitRational::UnitRational(Rational value) : value_(std::move(value)) {
  if (value_ < 0 || value_ > 1) {
    throw std::domain_error("value " + giry::to_string(value_) + " outside [0,1]");
  }
}

UnitRational::UnitRational(std::int64_t num, std::int64_t den) : UnitRational(make_rational(num, den)) {}

UnitRational UnitRational::complement() const { return UnitRational(Rational(1) - value_); }

UnitRational operator*(const UnitRational& a, const UnitRational& b) {
  return UnitRational(a.value() * b.value());
}

UnitRational cvx_combine(const UnitRational& u, const UnitRational& v, const UnitRational& r) {
  return UnitRational(r.value() * u.value() + (Rational(1) - r.value()) * v.value());
}

std::string to_string(const UnitRational& u) { return to_string(u.value()); }

UnitRational parse_unit(std::string_view text) { return UnitRational(parse_rational(text)); }

}  // namespace giry
