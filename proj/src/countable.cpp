#include "giry/countable.hpp"

#include <algorithm>
#include <iterator>
#include <set>

namespace giry {

namespace {

std::vector<NatPoint> sorted_unique(std::vector<NatPoint> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<NatPoint> set_union(const std::vector<NatPoint>& a, const std::vector<NatPoint>& b) {
  std::vector<NatPoint> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<NatPoint> set_intersection(const std::vector<NatPoint>& a, const std::vector<NatPoint>& b) {
  std::vector<NatPoint> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<NatPoint> set_difference(const std::vector<NatPoint>& a, const std::vector<NatPoint>& b) {
  std::vector<NatPoint> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

CountableSet::CountableSet(std::vector<NatPoint> listed, bool cofinite)
    : listed_(sorted_unique(std::move(listed))), cofinite_(cofinite) {}

CountableSet CountableSet::finite(std::vector<NatPoint> members) { return {std::move(members), false}; }
CountableSet CountableSet::cofinite(std::vector<NatPoint> excluded) { return {std::move(excluded), true}; }

bool CountableSet::contains(NatPoint n) const {
  return std::binary_search(listed_.begin(), listed_.end(), n) != cofinite_;
}

CountableSet CountableSet::complement() const { return {listed_, !cofinite_}; }

CountableSet CountableSet::operator|(const CountableSet& o) const {
  if (!cofinite_ && !o.cofinite_) return finite(set_union(listed_, o.listed_));
  if (cofinite_ && o.cofinite_) return cofinite(set_intersection(listed_, o.listed_));
  const auto& fin = cofinite_ ? o : *this;
  const auto& cof = cofinite_ ? *this : o;
  return cofinite(set_difference(cof.listed_, fin.listed_));
}

CountableSet CountableSet::operator&(const CountableSet& o) const {
  return (complement() | o.complement()).complement();
}

bool CountableSet::subset_of(const CountableSet& o) const { return (*this & o.complement()) == empty(); }

std::vector<NatPoint> CountableSet::first_members(std::size_t count) const {
  if (!cofinite_) return {listed_.begin(), listed_.begin() + static_cast<std::ptrdiff_t>(std::min(count, listed_.size()))};
  std::vector<NatPoint> out;
  NatPoint n = 0;
  auto skip = listed_.begin();
  while (out.size() < count) {
    if (skip != listed_.end() && *skip == n) {
      ++skip;
    } else {
      out.push_back(n);
    }
    ++n;
  }
  return out;
}

CountableIFunction::CountableIFunction(std::map<NatPoint, UnitRational> exceptions, UnitRational tail)
    : tail_(std::move(tail)) {
  for (auto& [n, v] : exceptions)
    if (v != tail_) exceptions_.emplace(n, v);
}

const UnitRational& CountableIFunction::operator()(NatPoint n) const {
  const auto it = exceptions_.find(n);
  return it == exceptions_.end() ? tail_ : it->second;
}

CountableIFunction CountableIFunction::scaled(const UnitRational& alpha) const {
  return pointwise_combine(*this, constant(UnitRational::zero()), alpha);
}

bool CountableIFunction::leq(const CountableIFunction& g) const {
  if (tail_ > g.tail_) return false;
  for (const auto& [n, v] : exceptions_)
    if (v > g(n)) return false;
  for (const auto& [n, v] : g.exceptions_)
    if ((*this)(n) > v) return false;
  return true;
}

CountableIFunction indicator(const CountableSet& s) {
  // Listed points are the members of a finite set, the non-members of a cofinite one.
  const auto listed_value = s.is_cofinite() ? UnitRational::zero() : UnitRational::one();
  std::map<NatPoint, UnitRational> exceptions;
  for (NatPoint n : s.listed()) exceptions.emplace(n, listed_value);
  return {std::move(exceptions), s.is_cofinite() ? UnitRational::one() : UnitRational::zero()};
}

CountableIFunction pointwise_combine(const CountableIFunction& f, const CountableIFunction& g,
                                     const UnitRational& r) {
  std::set<NatPoint> keys;
  for (const auto& [n, v] : f.exceptions()) keys.insert(n);
  for (const auto& [n, v] : g.exceptions()) keys.insert(n);
  std::map<NatPoint, UnitRational> exceptions;
  for (NatPoint n : keys) exceptions.emplace(n, cvx_combine(f(n), g(n), r));
  return {std::move(exceptions), cvx_combine(f.tail(), g.tail(), r)};
}

}  // namespace giry
