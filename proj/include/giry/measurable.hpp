#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "giry/rational.hpp"

namespace giry {

using Point = std::size_t;
using Block = std::vector<Point>;

/**
 * A finite measurable space: the points {0..n-1} together with the atom
 * partition of its sigma-algebra. The measurable sets are exactly the unions
 * of atoms. Atoms are kept in canonical order (sorted by least element, each
 * block sorted), so two spaces are equal iff they have the same sigma-algebra.
 */
class FiniteSpace {
 public:
  /// Throws std::invalid_argument unless `blocks` is a partition of {0..n-1}.
  FiniteSpace(std::size_t n_points, std::vector<Block> blocks);

  std::size_t n_points() const noexcept { return atom_of_.size(); }
  std::size_t n_atoms() const noexcept { return atoms_.size(); }
  const std::vector<Block>& atoms() const noexcept { return atoms_; }
  const Block& atom(std::size_t i) const { return atoms_.at(i); }
  std::size_t atom_of(Point p) const { return atom_of_.at(p); }
  /// Least point of atom i; used as its representative.
  Point representative(std::size_t i) const { return atoms_.at(i).front(); }
  bool is_discrete() const noexcept { return n_atoms() == n_points(); }

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) { return a.atoms_ == b.atoms_; }

 private:
  std::vector<Block> atoms_;
  std::vector<std::size_t> atom_of_;
};

using SpaceRef = std::shared_ptr<const FiniteSpace>;

SpaceRef make_space(std::size_t n_points, std::vector<Block> blocks);
SpaceRef discrete_space(std::size_t n_points);
SpaceRef trivial_space(std::size_t n_points);

/// Pointer-equal or structurally equal.
bool same_space(const SpaceRef& a, const SpaceRef& b);
/// Throws std::invalid_argument with `what` when the spaces differ.
void require_same_space(const SpaceRef& a, const SpaceRef& b, const char* what);

/// Smallest sigma-algebra on {0..n-1} containing every generator. Two points
/// share an atom iff they belong to exactly the same generators.
SpaceRef generate_sigma_algebra(std::size_t n_points, const std::vector<Block>& generators);

/// All set partitions of {0..n-1}, i.e. every sigma-algebra on n points.
std::vector<SpaceRef> all_sigma_algebras(std::size_t n_points);

/// A measurable set, stored as the set of atoms it contains.
class MeasurableSet {
 public:
  MeasurableSet(SpaceRef space, std::vector<bool> atom_mask);

  static MeasurableSet empty(SpaceRef space);
  static MeasurableSet full(SpaceRef space);
  static MeasurableSet of_atoms(SpaceRef space, const std::vector<std::size_t>& atoms);
  /// Throws std::invalid_argument if the points do not form a union of atoms.
  static MeasurableSet of_points(SpaceRef space, const std::vector<Point>& points);

  const SpaceRef& space() const noexcept { return space_; }
  const std::vector<bool>& atom_mask() const noexcept { return mask_; }
  bool contains_atom(std::size_t i) const { return mask_.at(i); }
  bool contains_point(Point p) const { return mask_.at(space_->atom_of(p)); }
  std::vector<std::size_t> atom_indices() const;
  std::vector<Point> points() const;
  bool is_empty() const;
  bool is_full() const;

  MeasurableSet complement() const;
  MeasurableSet operator|(const MeasurableSet& other) const;
  MeasurableSet operator&(const MeasurableSet& other) const;
  bool subset_of(const MeasurableSet& other) const;

  friend bool operator==(const MeasurableSet& a, const MeasurableSet& b) {
    return same_space(a.space_, b.space_) && a.mask_ == b.mask_;
  }

 private:
  SpaceRef space_;
  std::vector<bool> mask_;
};

/// Every measurable set of the space (2^atoms of them; at most 20 atoms).
std::vector<MeasurableSet> all_measurable_sets(const SpaceRef& space);

/// A point map between finite spaces. Measurability is a separate check.
class MeasurableFn {
 public:
  MeasurableFn(SpaceRef dom, SpaceRef cod, std::vector<Point> table);

  static MeasurableFn identity(SpaceRef space);
  static MeasurableFn constant(SpaceRef dom, SpaceRef cod, Point value);

  const SpaceRef& dom() const noexcept { return dom_; }
  const SpaceRef& cod() const noexcept { return cod_; }
  const std::vector<Point>& table() const noexcept { return table_; }
  Point operator()(Point x) const { return table_.at(x); }

  /// Point-level preimage; throws std::invalid_argument if it is not measurable.
  MeasurableSet preimage(const MeasurableSet& s) const;

 private:
  SpaceRef dom_;
  SpaceRef cod_;
  std::vector<Point> table_;
};

/// g after f.
MeasurableFn compose(const MeasurableFn& g, const MeasurableFn& f);

/// True iff the preimage of every atom of the codomain is a union of atoms of
/// the domain.
bool is_measurable(const MeasurableFn& f);

/// Every measurable map dom -> cod. Throws SizeCapError beyond `cap` maps.
std::vector<MeasurableFn> enumerate_measurable_maps(const SpaceRef& dom, const SpaceRef& cod,
                                                    std::size_t cap = 100000);

/// A measurable function X -> I: one value per atom.
class IFunction {
 public:
  IFunction(SpaceRef space, std::vector<UnitRational> atom_values);

  static IFunction constant(SpaceRef space, const UnitRational& u);
  /// Builds from per-point values; throws if not constant on atoms.
  static IFunction from_points(SpaceRef space, const std::vector<UnitRational>& point_values);

  const SpaceRef& space() const noexcept { return space_; }
  const std::vector<UnitRational>& atom_values() const noexcept { return values_; }
  const UnitRational& at_atom(std::size_t i) const { return values_.at(i); }
  const UnitRational& operator()(Point p) const { return values_.at(space_->atom_of(p)); }

  /// alpha * f, written as f +_alpha 0.
  IFunction scaled(const UnitRational& alpha) const;
  /// Pointwise f <= g.
  bool leq(const IFunction& g) const;

  friend bool operator==(const IFunction& a, const IFunction& b) {
    return same_space(a.space_, b.space_) && a.values_ == b.values_;
  }

 private:
  SpaceRef space_;
  std::vector<UnitRational> values_;
};

IFunction indicator(const MeasurableSet& s);

/// (f +_r g)(x) = f(x) +_r g(x). Throws on space mismatch.
IFunction pointwise_combine(const IFunction& f, const IFunction& g, const UnitRational& r);

/// h after f, a function on dom(f). Throws if f is not measurable.
IFunction precompose(const IFunction& h, const MeasurableFn& f);

/// f = sum coef_i * chi_{set_i} with the coefficients summing to one.
struct SimpleDecomposition {
  struct Term {
    UnitRational coef;
    MeasurableSet set;
  };
  std::vector<Term> terms;

  Rational coefficient_sum() const;
  IFunction recompose(const SpaceRef& space) const;
};

/// Telescoping convex-sum decomposition over the level sets of f, ordered by
/// increasing value a_1 < ... < a_n:
///   a_1 chi_{L_1 u .. u L_n} + (a_2 - a_1) chi_{L_2 u .. u L_n} + ... + (1 - a_n) chi_{empty}.
/// Zero coefficients are kept.
SimpleDecomposition telescoping_decompose(const IFunction& f);

/// Drops zero-coefficient terms.
SimpleDecomposition normalize(const SimpleDecomposition& d);

class SizeCapError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// X (x) Y on the point set X x Y, point (x, y) stored at index x * |Y| + y.
struct TensorProduct {
  SpaceRef x;
  SpaceRef y;
  SpaceRef space;

  Point pair(Point xp, Point yp) const { return xp * y->n_points() + yp; }
  Point x_of(Point p) const { return p / y->n_points(); }
  Point y_of(Point p) const { return p % y->n_points(); }

  /// Gamma_y : X -> X (x) Y, x |-> (x, y).
  MeasurableFn constant_graph(Point yp) const;
  /// Gamma_f : X -> X (x) Y, x |-> (x, f(x)).
  MeasurableFn graph(const MeasurableFn& f) const;
  /// Gamma_g : Y -> X (x) Y, y |-> (g(y), y).
  MeasurableFn cograph(const MeasurableFn& g) const;
  MeasurableFn project_x() const;
  MeasurableFn project_y() const;
  /// The rectangle A x B.
  MeasurableSet rectangle(const MeasurableSet& a, const MeasurableSet& b) const;
};

constexpr std::size_t kDefaultTensorCap = 12;

/// The final sigma-algebra on X x Y making every graph function Gamma_f
/// (f : X -> Y measurable) and Gamma_g (g : Y -> X measurable) measurable.
/// A subset is measurable iff each Gamma_f(atom) and Gamma_g(atom) lies
/// entirely inside or outside it, so the atoms are the connected components
/// of those images. Throws SizeCapError when |X| * |Y| > cap.
TensorProduct tensor_sigma_algebra(const SpaceRef& x, const SpaceRef& y,
                                   std::size_t cap = kDefaultTensorCap);

/// f (x) g : X (x) Y -> X' (x) Y'.
MeasurableFn tensor_map(const TensorProduct& from, const TensorProduct& to, const MeasurableFn& f,
                        const MeasurableFn& g);

}  // namespace giry
