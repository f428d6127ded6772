#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "giry/rational.hpp"

namespace giry {

using NatPoint = std::uint64_t;

/// A subset of the natural numbers under the powerset sigma-algebra, kept in
/// finite / cofinite form: `listed` holds the members of a finite set or the
/// non-members of a cofinite one.
class CountableSet {
 public:
  static CountableSet finite(std::vector<NatPoint> members);
  static CountableSet cofinite(std::vector<NatPoint> excluded);
  static CountableSet empty() { return finite({}); }
  static CountableSet all() { return cofinite({}); }
  static CountableSet singleton(NatPoint n) { return finite({n}); }

  bool is_cofinite() const noexcept { return cofinite_; }
  const std::vector<NatPoint>& listed() const noexcept { return listed_; }
  bool contains(NatPoint n) const;

  CountableSet complement() const;
  CountableSet operator|(const CountableSet& other) const;
  CountableSet operator&(const CountableSet& other) const;
  bool subset_of(const CountableSet& other) const;

  /// The first `count` members in increasing order (fewer if the set is finite).
  std::vector<NatPoint> first_members(std::size_t count) const;

  friend bool operator==(const CountableSet&, const CountableSet&) = default;

 private:
  CountableSet(std::vector<NatPoint> listed, bool cofinite);
  std::vector<NatPoint> listed_;
  bool cofinite_ = false;
};

/// A function N -> I equal to `tail` except at finitely many points.
class CountableIFunction {
 public:
  CountableIFunction(std::map<NatPoint, UnitRational> exceptions, UnitRational tail);

  static CountableIFunction constant(const UnitRational& u) { return {{}, u}; }

  const UnitRational& operator()(NatPoint n) const;
  const std::map<NatPoint, UnitRational>& exceptions() const noexcept { return exceptions_; }
  const UnitRational& tail() const noexcept { return tail_; }

  CountableIFunction scaled(const UnitRational& alpha) const;
  bool leq(const CountableIFunction& g) const;

  friend bool operator==(const CountableIFunction&, const CountableIFunction&) = default;

 private:
  std::map<NatPoint, UnitRational> exceptions_;
  UnitRational tail_;
};

CountableIFunction indicator(const CountableSet& s);
CountableIFunction pointwise_combine(const CountableIFunction& f, const CountableIFunction& g,
                                     const UnitRational& r);

}  // namespace giry
