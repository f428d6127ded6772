#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "giry/convex.hpp"
#include "giry/functional.hpp"
#include "giry/sampling.hpp"

namespace giry {

/**
 * Every base convex space here is a simplex with `dim` generators. The unit
 * interval is the 2-generator simplex with t <-> (1-t, t), and I x I enters
 * through its four corners (see pair_prime). An affine map h : base -> I is
 * then the vector of its values at the generators, h(b) = sum_i b_i h_i.
 */
using HomParam = std::vector<UnitRational>;

struct Base {
  std::size_t dim;
  std::string name;

  static Base simplex(std::size_t n) { return {n, "simplex" + std::to_string(n)}; }
  static Base interval() { return {2, "I"}; }
  friend bool operator==(const Base& a, const Base& b) { return a.dim == b.dim; }
};

/// h(b) for a point b of the base.
UnitRational apply_hom(const HomParam& h, const SimplexPoint& b);
/// h o k for k : Delta_n -> Delta_m.
HomParam precompose_hom(const HomParam& h, const AffineMap<Simplex>& k);

/// Cvx(I, I) in generator coordinates.
HomParam hom_of_endo(const AffineEndoI& h);
HomParam identity_on_interval();
/// pi_1 +_alpha pi_2 on the corners (0,0), (1,0), (0,1), (1,1).
HomParam projection_combination_hom(const UnitRational& alpha);
HomParam projection_hom(int which);

/// The generator t of I as a point of the 2-simplex.
SimplexPoint interval_point(const UnitRational& t);
/// (u, v) in I x I as a point over the four corners: bilinear weights.
SimplexPoint square_point(const UnitRational& u, const UnitRational& v);

/// The affine map I x I -> I given by a hom on the corners, as a simplex map
/// Delta_4 -> Delta_2.
AffineMap<Simplex> corner_map_to_interval(const HomParam& corner_values);

/// An element K of iota(A): a map Cvx(A, I) -> I. Canonical elements are the
/// evaluations h |-> h(b) at a point b.
class IotaElement {
 public:
  using Body = std::function<UnitRational(const HomParam&)>;

  static IotaElement canonical(SimplexPoint b);
  static IotaElement derived(std::size_t dim, std::string name, Body body);
  static IotaElement black_box(std::size_t dim, std::string name, Body body);

  /// Throws std::invalid_argument on a hom of the wrong dimension.
  UnitRational operator()(const HomParam& h) const;

  std::size_t dim() const noexcept { return dim_; }
  const std::optional<SimplexPoint>& point() const noexcept { return point_; }
  const std::string& name() const noexcept { return name_; }
  bool certified() const noexcept { return certified_; }

 private:
  IotaElement(std::size_t dim, std::string name, Body body, std::optional<SimplexPoint> point, bool certified);
  std::size_t dim_;
  std::string name_;
  Body body_;
  std::optional<SimplexPoint> point_;
  bool certified_;
};

/// Agreement on every supplied hom.
Verdict iota_equal(const IotaElement& a, const IotaElement& b, const std::vector<HomParam>& homs);

/// iota(k)(K) = K o Cvx(k, I), i.e. h |-> K(h o k).
IotaElement iota_arrow(const AffineMap<Simplex>& k, const IotaElement& k_elem);

/// An object (f, A) of the slice category under X: one iota(A) element per atom.
struct SliceObject {
  SpaceRef source;
  Base target;
  std::vector<IotaElement> atom_images;

  const IotaElement& operator()(Point x) const { return atom_images.at(source->atom_of(x)); }
};

/// Builds a slice object from per-point images; throws unless constant on atoms
/// (checked as equality on the supplied homs).
SliceObject slice_from_points(const SpaceRef& source, Base target, const std::vector<IotaElement>& point_images,
                              const std::vector<HomParam>& homs);

/// g = iota(k) o f.
SliceObject compose_slice(const AffineMap<Simplex>& k, Base target, const SliceObject& f);

/// f^[h](x) = f(x)[h].
IFunction hat(const SliceObject& f, const HomParam& h);

/// gamma'(x)[h] = h(gamma(x)), with target I.
SliceObject prime(const IFunction& gamma);

/// <gamma_1, gamma_2>'(x) = the corner point of (gamma_1(x), gamma_2(x)).
SliceObject pair_prime(const IFunction& gamma1, const IFunction& gamma2);

/// lambda_f(G) = G o f^.
IotaElement lambda_leg(const SliceObject& f, const Functional& g);

/// A cone evaluated at one vertex point z: every slice object is sent to an
/// element of iota of its target. Must be reentrant.
using ConeAtPoint = std::function<IotaElement(const SliceObject&)>;

/// omega_g(z)[h] = omega_f(z)[h o k] for g = iota(k) o f, on every hom;
/// the witness names (k, f, g, h).
Verdict check_cone_condition(const ConeAtPoint& omega, const SliceObject& f, const AffineMap<Simplex>& k,
                             Base target, const std::vector<HomParam>& homs_on_target);

/// theta(z)[gamma] = omega_{gamma'}(z)[id_I]. The result is a black box: its
/// membership in T(X) is for the checkers to decide.
Functional theta_mediator(const ConeAtPoint& omega, const SpaceRef& space);

/// The proof obligations for theta, run against a concrete cone.
struct ThetaReport {
  Verdict cone_conditions;   // the slice arrows used below (constants, projections)
  Verdict weakly_averaging;  // theta(u) = u
  Verdict affine;            // theta(g1 +_a g2) = theta(g1) +_a theta(g2)
  Verdict affine_via_pairs;  // both routes through <g1, g2>' and pi_1 +_a pi_2
  Verdict preserves_limits;  // weakened: standard monotone chains only
  bool all_passed() const {
    return cone_conditions && weakly_averaging && affine && affine_via_pairs && preserves_limits;
  }
};

ThetaReport check_theta(const ConeAtPoint& omega, const SpaceRef& space, const std::vector<IFunction>& gammas,
                        const std::vector<UnitRational>& alphas, const std::vector<HomParam>& interval_homs);

/// The cone with vertex T(T(X)) given by omega_f(Q)[h] = Q(G |-> G(f^[h])).
ConeAtPoint multiplication_cone(const FunctionalOnFunctionals& q);
/// The cone with vertex T(X) built from lambda at a fixed G.
ConeAtPoint lambda_cone(const Functional& g);

/// Agreement through every lambda_{chi_S'} at id_I (S ranging over measurable
/// sets) must coincide with extensional equality.
Verdict check_mediator_uniqueness(const Functional& a, const Functional& b);

/// lambda_g(eta_X(x)) = g(x) for every point.
Verdict check_unit_as_mediator(const SliceObject& g, const std::vector<HomParam>& homs);

/// A finite stand-in for iota(A): distinct elements, with the sigma-algebra
/// generated by the preimages of the probe evaluations.
struct IotaFixture {
  Base base;
  std::vector<IotaElement> elements;
  std::vector<HomParam> probes;
  SpaceRef space;
};

class FixtureTooSmall : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws FixtureTooSmall unless the probes separate every pair of elements.
IotaFixture make_iota_fixture(Base base, std::vector<IotaElement> elements, std::vector<HomParam> probes);

/// ev_h on the fixture carrier.
IFunction evaluation_function(const IotaFixture& fixture, const HomParam& h);

/// epsilon_A(G)[h] = G(ev_h), for G on the fixture space.
IotaElement epsilon(const IotaFixture& fixture, const Functional& g);

/// The image fixture iota(k)(fixture) with duplicates merged, together with
/// the induced map between the fixture spaces.
struct FixtureImage {
  IotaFixture image;
  MeasurableFn map;
};
FixtureImage image_fixture(const IotaFixture& fixture, const AffineMap<Simplex>& k, Base target,
                           std::vector<HomParam> target_probes);

/// epsilon_B(T(iota k)(G)) = iota(k)(epsilon_A(G)) on every hom of B.
Verdict check_epsilon_naturality(const IotaFixture& fixture, const AffineMap<Simplex>& k, Base target,
                                 const std::vector<HomParam>& target_probes, const Functional& g);

// Samplers for the codensity suite.
HomParam random_hom(Rng& rng, std::size_t dim);
/// Generator selectors, the constants 0, 1/2, 1, and `extra` random homs.
std::vector<HomParam> standard_homs(Rng& rng, std::size_t dim, std::size_t extra);
SimplexPoint random_simplex_point(Rng& rng, std::size_t dim, std::int64_t max_weight = 5);
AffineMap<Simplex> random_affine_map(Rng& rng, std::size_t from_dim, std::size_t to_dim);
/// Canonical images at random points.
SliceObject random_slice(Rng& rng, const SpaceRef& source, Base target);

}  // namespace giry
