#pragma once

#include <array>
#include <concepts>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "giry/measurable.hpp"
#include "giry/rational.hpp"

namespace giry {

/**
 * A convex space: a carrier `Element` with a binary operation a +_r b for
 * every r in [0,1]. Instances are cheap value objects describing the
 * structure (e.g. the dimension of a simplex); elements carry no reference
 * back to them.
 */
template <class S>
concept ConvexSpace = requires(const S& s, const typename S::Element& a, const UnitRational& r) {
  { s.combine(a, a, r) } -> std::convertible_to<typename S::Element>;
  { s.describe(a) } -> std::convertible_to<std::string>;
  { a == a } -> std::convertible_to<bool>;
};

/// Result of checking one property on a sample set. A failure always carries
/// a witness.
struct Verdict {
  bool passed = true;
  std::string witness;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string witness) { return {false, std::move(witness)}; }
  explicit operator bool() const noexcept { return passed; }
};

struct AxiomReport {
  /// Index k holds axiom (k+1).
  Verdict axioms[4];
  bool all_passed() const { return axioms[0] && axioms[1] && axioms[2] && axioms[3]; }
};

/// Weight for the deformation axiom: (1-p)q / (1-pq), or nullopt when pq = 1
/// (then any weight is accepted).
std::optional<UnitRational> deformation_weight(const UnitRational& p, const UnitRational& q);

/**
 * Checks the four convex-space axioms on every sample triple and every
 * (p, q) drawn from `weights`:
 *   (1) a +_0 b = b
 *   (2) a +_r a = a
 *   (3) a +_r b = b +_{1-r} a
 *   (4) (a +_p b) +_q c = a +_{pq} (b +_r c),  r = (1-p)q / (1-pq)
 * The first violation of each axiom is reported.
 */
template <ConvexSpace S>
AxiomReport check_axioms(const S& space,
                         const std::vector<std::array<typename S::Element, 3>>& samples,
                         const std::vector<UnitRational>& weights) {
  AxiomReport report;
  auto fail_once = [&](int axiom, auto&& make_witness) {
    if (report.axioms[axiom].passed) report.axioms[axiom] = Verdict::fail(make_witness());
  };
  const UnitRational zero = UnitRational::zero();
  for (const auto& [a, b, c] : samples) {
    if (!(space.combine(a, b, zero) == b)) {
      fail_once(0, [&] { return "a=" + space.describe(a) + " b=" + space.describe(b) + " r=0"; });
    }
    for (const auto& r : weights) {
      if (!(space.combine(a, a, r) == a)) {
        fail_once(1, [&] { return "a=" + space.describe(a) + " r=" + to_string(r); });
      }
      if (!(space.combine(a, b, r) == space.combine(b, a, r.complement()))) {
        fail_once(2, [&] { return "a=" + space.describe(a) + " b=" + space.describe(b) + " r=" + to_string(r); });
      }
    }
    for (const auto& p : weights) {
      for (const auto& q : weights) {
        const auto r = deformation_weight(p, q);
        if (!r) continue;
        const auto lhs = space.combine(space.combine(a, b, p), c, q);
        const auto rhs = space.combine(a, space.combine(b, c, *r), p * q);
        if (!(lhs == rhs)) {
          fail_once(3, [&] {
            return "a=" + space.describe(a) + " b=" + space.describe(b) + " c=" + space.describe(c) +
                   " p=" + to_string(p) + " q=" + to_string(q);
          });
        }
      }
    }
  }
  return report;
}

/// The unit interval with u +_r v = r u + (1-r) v.
struct UnitInterval {
  using Element = UnitRational;
  Element combine(const Element& a, const Element& b, const UnitRational& r) const { return cvx_combine(a, b, r); }
  std::string describe(const Element& a) const { return to_string(a); }
};

/// A point of the free convex space on n generators, in barycentric
/// coordinates summing exactly to one.
class SimplexPoint {
 public:
  explicit SimplexPoint(std::vector<UnitRational> coords);

  static SimplexPoint vertex(std::size_t n, std::size_t i);
  /// The point of the n-simplex with equal weight on every generator.
  static SimplexPoint barycenter(std::size_t n);

  std::size_t dim() const noexcept { return coords_.size(); }
  const std::vector<UnitRational>& coords() const noexcept { return coords_; }
  const UnitRational& operator[](std::size_t i) const { return coords_.at(i); }

  friend bool operator==(const SimplexPoint&, const SimplexPoint&) = default;

 private:
  std::vector<UnitRational> coords_;
};

std::string to_string(const SimplexPoint& p);

/// The free convex space on n generators, with coordinatewise combination.
struct Simplex {
  std::size_t n;
  using Element = SimplexPoint;
  Element combine(const Element& a, const Element& b, const UnitRational& r) const;
  std::string describe(const Element& a) const { return to_string(a); }
};

/// I^n with the componentwise structure (I x I for n = 2).
struct UnitCube {
  std::size_t n;
  using Element = std::vector<UnitRational>;
  Element combine(const Element& a, const Element& b, const UnitRational& r) const;
  std::string describe(const Element& a) const;
};

/// I^X with (f +_r g)(x) = f(x) +_r g(x).
struct PointwiseFunctions {
  SpaceRef space;
  using Element = IFunction;
  Element combine(const Element& a, const Element& b, const UnitRational& r) const {
    return pointwise_combine(a, b, r);
  }
  std::string describe(const Element& a) const;
};

/// A nested binary convex sum over generator leaves, e.g. (a1 +_{1/2} a2) +_{1/3} a3.
class FreeForm {
 public:
  static FreeForm generator(std::size_t index);
  static FreeForm combine(FreeForm left, FreeForm right, UnitRational r);

  bool is_generator() const noexcept { return node_ == nullptr; }
  std::size_t generator_index() const noexcept { return index_; }
  const FreeForm& left() const;
  const FreeForm& right() const;
  const UnitRational& weight() const;
  /// Largest generator index used, plus one.
  std::size_t arity() const;

  template <ConvexSpace S>
  typename S::Element evaluate(const S& space, const std::vector<typename S::Element>& images) const {
    if (is_generator()) return images.at(index_);
    return space.combine(left().evaluate(space, images), right().evaluate(space, images), weight());
  }

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
  std::size_t index_ = 0;
};

std::string to_string(const FreeForm& form);

/// Recursive expansion: a_i |-> e_i, (L +_r R) |-> r L + (1-r) R.
SimplexPoint free_to_barycentric(const FreeForm& form, std::size_t n_generators);

/// Left-nested form ((a_i1 +_s1 a_i2) +_s2 a_i3) ... over the nonzero
/// coordinates, with s_j = (c_1 + .. + c_j) / (c_1 + .. + c_{j+1}).
FreeForm barycentric_to_free(const SimplexPoint& p);

/// An affine map out of the n-simplex, determined by its generator images.
template <ConvexSpace S>
struct AffineMap {
  S cod;
  std::vector<typename S::Element> images;

  std::size_t dom_dim() const { return images.size(); }
};

/// The barycentric push: sum_i p_i k(e_i), computed in the codomain's own
/// convex structure through the free form of p. Throws on dimension mismatch.
template <ConvexSpace S>
typename S::Element apply_affine(const AffineMap<S>& k, const SimplexPoint& p) {
  if (p.dim() != k.dom_dim()) throw std::invalid_argument("apply_affine: dimension mismatch");
  return barycentric_to_free(p).evaluate(k.cod, k.images);
}

/// An affine endomap of I, h(t) = (1-t) h0 + t h1.
struct AffineEndoI {
  UnitRational h0;
  UnitRational h1;

  static AffineEndoI identity() { return {UnitRational::zero(), UnitRational::one()}; }
  static AffineEndoI constant(const UnitRational& u) { return {u, u}; }

  UnitRational operator()(const UnitRational& t) const { return cvx_combine(h1, h0, t); }
  friend bool operator==(const AffineEndoI&, const AffineEndoI&) = default;
};

/// (this after k).
AffineEndoI compose(const AffineEndoI& h, const AffineEndoI& k);

/// pi_1 +_alpha pi_2 : I x I -> I, (u, v) |-> u +_alpha v.
UnitRational projection_combination(const UnitRational& alpha, const std::vector<UnitRational>& uv);

/// Checks f(a +_r b) = f(a) +_r f(b) on every sample pair and weight.
template <ConvexSpace D, ConvexSpace C, class F>
Verdict check_affine_map(const D& dom, const C& cod, F&& f,
                         const std::vector<std::pair<typename D::Element, typename D::Element>>& samples,
                         const std::vector<UnitRational>& weights) {
  for (const auto& [a, b] : samples) {
    for (const auto& r : weights) {
      if (!(f(dom.combine(a, b, r)) == cod.combine(f(a), f(b), r))) {
        return Verdict::fail("a=" + dom.describe(a) + " b=" + dom.describe(b) + " r=" + to_string(r));
      }
    }
  }
  return Verdict::pass();
}

/// All rationals k/d in [0,1] with d <= max_den, sorted and deduplicated.
std::vector<UnitRational> rational_grid(std::size_t max_den);

}  // namespace giry
