#pragma once

#include <functional>
#include <map>
#include <vector>

#include "giry/countable.hpp"
#include "giry/measurable.hpp"
#include "giry/mixture.hpp"

namespace giry {

/// A probability measure on a finite space: one mass per atom, summing to 1.
class Measure {
 public:
  Measure(SpaceRef space, std::vector<UnitRational> atom_masses);

  /// Masses given as arbitrary non-negative weights; normalized to sum 1.
  static Measure from_weights(SpaceRef space, const std::vector<std::int64_t>& weights);
  static Measure uniform(SpaceRef space);

  const SpaceRef& space() const noexcept { return space_; }
  const std::vector<UnitRational>& atom_masses() const noexcept { return masses_; }
  const UnitRational& mass_of_atom(std::size_t i) const { return masses_.at(i); }
  /// P(S), the sum over the atoms of S.
  UnitRational operator()(const MeasurableSet& s) const;

  friend bool operator==(const Measure& a, const Measure& b) {
    return same_space(a.space_, b.space_) && a.masses_ == b.masses_;
  }

 private:
  SpaceRef space_;
  std::vector<UnitRational> masses_;
};

std::string to_string(const Measure& p);

using MeasureOnMeasures = FiniteMixture<Measure>;

/// The Dirac measure at x: mass 1 on the atom containing x.
Measure dirac(const SpaceRef& space, Point x);

/// P f^{-1}. Throws std::invalid_argument if f is not measurable.
Measure pushforward(const Measure& p, const MeasurableFn& f);

/// The integral of f against P: sum over atoms of value times mass.
UnitRational integrate(const Measure& p, const IFunction& f);

/// mu'(Q)(S) = sum_i w_i q_i(S). Throws on mixed spaces.
Measure join(const MeasureOnMeasures& q);

/// G(eta'): P |-> sum over atoms a of P(a) [delta_a].
MeasureOnMeasures lift_dirac(const Measure& p);

/// tau_{P,y} = P Gamma_y^{-1}, a measure on X (x) Y.
Measure strength(const Measure& p, const TensorProduct& xy, Point y);
/// As above, computing X (x) Y under the given size cap.
Measure strength(const Measure& p, const SpaceRef& y_space, Point y, std::size_t cap = kDefaultTensorCap);

/// st_{X,Y}(f) = G(f).
std::function<Measure(const Measure&)> st_map(const MeasurableFn& f);

/**
 * The same map computed in three stages through the function space Y^X:
 * P |-> (P, f) |-> tau_{P,f} on X (x) Y^X |-> pushforward along
 * ev(x, g) = g(x). Y^X is realized on a finite family of measurable maps
 * containing f, with the sigma-algebra generated by the point evaluations;
 * the family is cut so that |X| * |family| stays within `cap`.
 */
Measure st_map_three_stage(const MeasurableFn& f, const Measure& p, std::size_t cap = kDefaultTensorCap);

/// P |-> integral of f against P.
std::function<UnitRational(const Measure&)> integral_operator(const IFunction& f);

/// For a {0,1}-valued f: push P along f into G(2), read off alpha under
/// G(2) = I, and evaluate at {1}. Throws if f takes other values.
UnitRational integral_via_two(const IFunction& f, const Measure& p);

/// A finitely supported probability measure on N.
class CountableMeasure {
 public:
  explicit CountableMeasure(std::map<NatPoint, UnitRational> masses);

  const std::map<NatPoint, UnitRational>& masses() const noexcept { return masses_; }
  UnitRational operator()(const CountableSet& s) const;

 private:
  std::map<NatPoint, UnitRational> masses_;
};

/// Finite-support sum plus the tail value times the (zero) tail mass.
UnitRational integrate(const CountableMeasure& p, const CountableIFunction& f);

}  // namespace giry
