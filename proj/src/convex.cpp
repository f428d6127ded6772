#include "giry/convex.hpp"

#include <algorithm>
#include <stdexcept>

namespace giry {

std::optional<UnitRational> deformation_weight(const UnitRational& p, const UnitRational& q) {
  const Rational pq = p.value() * q.value();
  if (pq == 1) return std::nullopt;
  return UnitRational((Rational(1) - p.value()) * q.value() / (Rational(1) - pq));
}

SimplexPoint::SimplexPoint(std::vector<UnitRational> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("simplex point needs at least one coordinate");
  Rational sum = 0;
  for (const auto& c : coords_) sum += c.value();
  if (sum != 1) throw std::invalid_argument("barycentric coordinates sum to " + to_string(sum) + ", not 1");
}

SimplexPoint SimplexPoint::vertex(std::size_t n, std::size_t i) {
  if (i >= n) throw std::out_of_range("simplex vertex index");
  std::vector<UnitRational> c(n);
  c[i] = UnitRational::one();
  return SimplexPoint(std::move(c));
}

SimplexPoint SimplexPoint::barycenter(std::size_t n) {
  return SimplexPoint(std::vector<UnitRational>(n, UnitRational(1, static_cast<std::int64_t>(n))));
}

std::string to_string(const SimplexPoint& p) {
  std::string out = "p:";
  for (const auto& c : p.coords()) out += " " + to_string(c);
  return out;
}

Simplex::Element Simplex::combine(const Element& a, const Element& b, const UnitRational& r) const {
  if (a.dim() != n || b.dim() != n) throw std::invalid_argument("simplex dimension mismatch");
  std::vector<UnitRational> c;
  c.reserve(n);
  for (std::size_t i = 0; i < n; ++i) c.push_back(cvx_combine(a[i], b[i], r));
  return SimplexPoint(std::move(c));
}

UnitCube::Element UnitCube::combine(const Element& a, const Element& b, const UnitRational& r) const {
  if (a.size() != n || b.size() != n) throw std::invalid_argument("cube dimension mismatch");
  Element c;
  c.reserve(n);
  for (std::size_t i = 0; i < n; ++i) c.push_back(cvx_combine(a[i], b[i], r));
  return c;
}

std::string UnitCube::describe(const Element& a) const {
  std::string out = "(";
  for (std::size_t i = 0; i < a.size(); ++i) out += (i ? ", " : "") + to_string(a[i]);
  return out + ")";
}

std::string PointwiseFunctions::describe(const Element& a) const {
  std::string out = "[";
  for (std::size_t i = 0; i < a.atom_values().size(); ++i) out += (i ? " " : "") + to_string(a.at_atom(i));
  return out + "]";
}

struct FreeForm::Node {
  FreeForm left;
  FreeForm right;
  UnitRational weight;
};

FreeForm FreeForm::generator(std::size_t index) {
  FreeForm f;
  f.index_ = index;
  return f;
}

FreeForm FreeForm::combine(FreeForm left, FreeForm right, UnitRational r) {
  FreeForm f;
  f.node_ = std::make_shared<const Node>(Node{std::move(left), std::move(right), std::move(r)});
  return f;
}

const FreeForm& FreeForm::left() const {
  if (!node_) throw std::logic_error("generator leaf has no children");
  return node_->left;
}

const FreeForm& FreeForm::right() const {
  if (!node_) throw std::logic_error("generator leaf has no children");
  return node_->right;
}

const UnitRational& FreeForm::weight() const {
  if (!node_) throw std::logic_error("generator leaf has no weight");
  return node_->weight;
}

std::size_t FreeForm::arity() const {
  if (is_generator()) return index_ + 1;
  return std::max(left().arity(), right().arity());
}

std::string to_string(const FreeForm& form) {
  if (form.is_generator()) return "a" + std::to_string(form.generator_index() + 1);
  return "(" + to_string(form.left()) + " +_{" + to_string(form.weight()) + "} " + to_string(form.right()) + ")";
}

SimplexPoint free_to_barycentric(const FreeForm& form, std::size_t n_generators) {
  if (form.arity() > n_generators) throw std::invalid_argument("free form uses more generators than available");
  std::vector<SimplexPoint> vertices;
  for (std::size_t i = 0; i < n_generators; ++i) vertices.push_back(SimplexPoint::vertex(n_generators, i));
  return form.evaluate(Simplex{n_generators}, vertices);
}

FreeForm barycentric_to_free(const SimplexPoint& p) {
  std::optional<FreeForm> acc;
  Rational prefix = 0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (p[i].is_zero()) continue;
    if (!acc) {
      acc = FreeForm::generator(i);
      prefix = p[i].value();
      continue;
    }
    const Rational extended = prefix + p[i].value();
    acc = FreeForm::combine(std::move(*acc), FreeForm::generator(i), UnitRational(prefix / extended));
    prefix = extended;
  }
  return *acc;  // the coordinates sum to 1, so at least one is nonzero
}

AffineEndoI compose(const AffineEndoI& h, const AffineEndoI& k) { return {h(k.h0), h(k.h1)}; }

UnitRational projection_combination(const UnitRational& alpha, const std::vector<UnitRational>& uv) {
  if (uv.size() != 2) throw std::invalid_argument("projection_combination expects a point of I x I");
  return cvx_combine(uv[0], uv[1], alpha);
}

std::vector<UnitRational> rational_grid(std::size_t max_den) {
  std::vector<UnitRational> out;
  for (std::size_t d = 1; d <= max_den; ++d)
    for (std::size_t k = 0; k <= d; ++k) out.emplace_back(static_cast<std::int64_t>(k), static_cast<std::int64_t>(d));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace giry
