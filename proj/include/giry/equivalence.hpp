#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "giry/functional.hpp"
#include "giry/giry.hpp"

namespace giry {

/// Raised by phi when its input is refuted as an element of T(X). `deficit`
/// is 1 minus the total computed mass (zero when the property gate failed
/// before masses were computed).
class NotInT : public std::domain_error {
 public:
  NotInT(const std::string& reason, Rational deficit)
      : std::domain_error("not a T(X) element: " + reason), deficit_(std::move(deficit)) {}
  const Rational& deficit() const noexcept { return deficit_; }

 private:
  Rational deficit_;
};

struct PhiOptions {
  /// Run the sampled property gate on black boxes before computing masses.
  bool property_gate = true;
};

/// nu_G(atom) = G(chi_atom). Black boxes pass the property gate first; the
/// masses must then sum to 1 exactly. Throws NotInT otherwise.
Measure phi(const Functional& g, PhiOptions options = {});

/// P |-> integral against P.
Functional gamma(const Measure& p);

/// phi on N: masses G(chi_{n}) for n < horizon must sum to G(chi_N) = 1.
/// Black boxes are first checked for weak averaging and for limit
/// preservation along the truncations of N. Throws NotInT.
CountableMeasure phi_countable(const CountableFunctional& g, std::size_t horizon, PhiOptions options = {});

/// phi(T(f)(G)) = G(f)(phi(G)).
Verdict check_naturality(const MeasurableFn& f, const Functional& g);

/// (phi . phi)_X(Q) = G(phi_X)(phi_{T(X)}(Q)): phi_{T(X)} reads the mass of
/// each support element G_i as Q(chi_{[G_i]}), [G_i] the extensional class.
/// Requires a finite support.
MeasureOnMeasures horizontal_composite(const FunctionalOnFunctionals& q);
/// The other route, phi_{G(X)}(T(phi_X)(Q)).
MeasureOnMeasures horizontal_composite_via_t(const FunctionalOnFunctionals& q);

/// Equality of finite mixtures as distributions: equal values are merged.
bool same_distribution(const MeasureOnMeasures& a, const MeasureOnMeasures& b);

struct MonadMorphismReport {
  Verdict left_square;   // phi o eta = eta'
  Verdict right_square;  // phi o mu = mu' o (phi . phi)
  Verdict horizontal;    // both routes of phi . phi agree
  bool all_passed() const { return left_square && right_square && horizontal; }
};

MonadMorphismReport check_monad_morphism(const SpaceRef& space, const std::vector<Point>& points,
                                         const std::vector<FunctionalOnFunctionals>& qs);

/// G(2) = I: alpha |-> alpha delta_0 + (1-alpha) delta_1 and back.
Measure measure_of_alpha(const UnitRational& alpha);
UnitRational alpha_of_measure(const Measure& p);
struct GiryTwoRow {
  UnitRational alpha;
  Measure measure;
};
std::vector<GiryTwoRow> giry_two_iso(const std::vector<UnitRational>& grid);
/// Both round trips are identities on the table.
Verdict check_giry_two_iso(const std::vector<GiryTwoRow>& table);

/// P +_r Q.
Measure combine_measures(const Measure& p, const Measure& q, const UnitRational& r);

/// phi(gamma(P) +_r gamma(Q)) = P +_r Q.
Verdict check_phi_affine(const Measure& p, const Measure& q, const UnitRational& r);

/// For a family of functionals, {i : phi(G_i)(S) in U} = {i : G_i(chi_S) in U}.
Verdict check_generator_correspondence(const std::vector<Functional>& family, const MeasurableSet& s,
                                       const std::vector<UnitRational>& u);

}  // namespace giry
