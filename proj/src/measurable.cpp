#include "giry/measurable.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace giry {

FiniteSpace::FiniteSpace(std::size_t n_points, std::vector<Block> blocks) {
  if (n_points == 0) throw std::invalid_argument("a measurable space needs at least one point");
  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  atom_of_.assign(n_points, kUnassigned);
  for (auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("empty atom");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.front() < b.front(); });
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (Point p : blocks[i]) {
      if (p >= n_points) throw std::invalid_argument("atom point " + std::to_string(p) + " out of range");
      if (atom_of_[p] != kUnassigned) {
        throw std::invalid_argument("point " + std::to_string(p) + " lies in two atoms");
      }
      atom_of_[p] = i;
    }
  }
  for (Point p = 0; p < n_points; ++p) {
    if (atom_of_[p] == kUnassigned) throw std::invalid_argument("point " + std::to_string(p) + " in no atom");
  }
  atoms_ = std::move(blocks);
}

SpaceRef make_space(std::size_t n_points, std::vector<Block> blocks) {
  return std::make_shared<const FiniteSpace>(n_points, std::move(blocks));
}

SpaceRef discrete_space(std::size_t n_points) {
  std::vector<Block> blocks;
  for (Point p = 0; p < n_points; ++p) blocks.push_back({p});
  return make_space(n_points, std::move(blocks));
}

SpaceRef trivial_space(std::size_t n_points) {
  Block all(n_points);
  std::iota(all.begin(), all.end(), Point{0});
  return make_space(n_points, {all});
}

bool same_space(const SpaceRef& a, const SpaceRef& b) { return a == b || (a && b && *a == *b); }

void require_same_space(const SpaceRef& a, const SpaceRef& b, const char* what) {
  if (!same_space(a, b)) throw std::invalid_argument(std::string(what) + ": space mismatch");
}

SpaceRef generate_sigma_algebra(std::size_t n_points, const std::vector<Block>& generators) {
  if (n_points == 0) throw std::invalid_argument("a measurable space needs at least one point");
  std::vector<std::vector<bool>> signature(n_points, std::vector<bool>(generators.size(), false));
  for (std::size_t g = 0; g < generators.size(); ++g) {
    for (Point p : generators[g]) {
      if (p >= n_points) throw std::invalid_argument("generator point out of range");
      signature[p][g] = true;
    }
  }
  std::map<std::vector<bool>, Block> classes;
  for (Point p = 0; p < n_points; ++p) classes[signature[p]].push_back(p);
  std::vector<Block> blocks;
  for (auto& [sig, block] : classes) blocks.push_back(std::move(block));
  return make_space(n_points, std::move(blocks));
}

namespace {

void partitions_rec(std::size_t n, Point next, std::vector<Block>& current, std::vector<SpaceRef>& out) {
  if (next == n) {
    out.push_back(make_space(n, current));
    return;
  }
  // by index: the recursion may grow `current`
  for (std::size_t b = 0; b < current.size(); ++b) {
    current[b].push_back(next);
    partitions_rec(n, next + 1, current, out);
    current[b].pop_back();
  }
  current.push_back({next});
  partitions_rec(n, next + 1, current, out);
  current.pop_back();
}

}  // namespace

std::vector<SpaceRef> all_sigma_algebras(std::size_t n_points) {
  std::vector<SpaceRef> out;
  std::vector<Block> current;
  partitions_rec(n_points, 0, current, out);
  return out;
}

MeasurableSet::MeasurableSet(SpaceRef space, std::vector<bool> atom_mask)
    : space_(std::move(space)), mask_(std::move(atom_mask)) {
  if (!space_) throw std::invalid_argument("measurable set without a space");
  if (mask_.size() != space_->n_atoms()) throw std::invalid_argument("atom mask size mismatch");
}

MeasurableSet MeasurableSet::empty(SpaceRef space) {
  const auto n = space->n_atoms();
  return {std::move(space), std::vector<bool>(n, false)};
}

MeasurableSet MeasurableSet::full(SpaceRef space) {
  const auto n = space->n_atoms();
  return {std::move(space), std::vector<bool>(n, true)};
}

MeasurableSet MeasurableSet::of_atoms(SpaceRef space, const std::vector<std::size_t>& atoms) {
  std::vector<bool> mask(space->n_atoms(), false);
  for (auto a : atoms) mask.at(a) = true;
  return {std::move(space), std::move(mask)};
}

MeasurableSet MeasurableSet::of_points(SpaceRef space, const std::vector<Point>& points) {
  std::vector<bool> in(space->n_points(), false);
  for (Point p : points) in.at(p) = true;
  std::vector<bool> mask(space->n_atoms(), false);
  for (std::size_t a = 0; a < space->n_atoms(); ++a) {
    const auto& block = space->atom(a);
    const bool first = in[block.front()];
    for (Point p : block) {
      if (in[p] != first) {
        throw std::invalid_argument("point set splits atom " + std::to_string(a) + "; not measurable");
      }
    }
    mask[a] = first;
  }
  return {std::move(space), std::move(mask)};
}

std::vector<std::size_t> MeasurableSet::atom_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < mask_.size(); ++a)
    if (mask_[a]) out.push_back(a);
  return out;
}

std::vector<Point> MeasurableSet::points() const {
  std::vector<Point> out;
  for (std::size_t a = 0; a < mask_.size(); ++a)
    if (mask_[a]) out.insert(out.end(), space_->atom(a).begin(), space_->atom(a).end());
  std::sort(out.begin(), out.end());
  return out;
}

bool MeasurableSet::is_empty() const { return std::none_of(mask_.begin(), mask_.end(), [](bool b) { return b; }); }
bool MeasurableSet::is_full() const { return std::all_of(mask_.begin(), mask_.end(), [](bool b) { return b; }); }

MeasurableSet MeasurableSet::complement() const {
  std::vector<bool> mask(mask_.size());
  for (std::size_t a = 0; a < mask_.size(); ++a) mask[a] = !mask_[a];
  return {space_, std::move(mask)};
}

MeasurableSet MeasurableSet::operator|(const MeasurableSet& other) const {
  require_same_space(space_, other.space_, "set union");
  std::vector<bool> mask(mask_.size());
  for (std::size_t a = 0; a < mask_.size(); ++a) mask[a] = mask_[a] || other.mask_[a];
  return {space_, std::move(mask)};
}

MeasurableSet MeasurableSet::operator&(const MeasurableSet& other) const {
  require_same_space(space_, other.space_, "set intersection");
  std::vector<bool> mask(mask_.size());
  for (std::size_t a = 0; a < mask_.size(); ++a) mask[a] = mask_[a] && other.mask_[a];
  return {space_, std::move(mask)};
}

bool MeasurableSet::subset_of(const MeasurableSet& other) const {
  require_same_space(space_, other.space_, "subset test");
  for (std::size_t a = 0; a < mask_.size(); ++a)
    if (mask_[a] && !other.mask_[a]) return false;
  return true;
}

std::vector<MeasurableSet> all_measurable_sets(const SpaceRef& space) {
  const std::size_t n = space->n_atoms();
  if (n > 20) throw SizeCapError("too many atoms to enumerate all measurable sets");
  std::vector<MeasurableSet> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    std::vector<bool> mask(n);
    for (std::size_t a = 0; a < n; ++a) mask[a] = (bits >> a) & 1U;
    out.emplace_back(space, std::move(mask));
  }
  return out;
}

MeasurableFn::MeasurableFn(SpaceRef dom, SpaceRef cod, std::vector<Point> table)
    : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
  if (!dom_ || !cod_) throw std::invalid_argument("map without domain or codomain");
  if (table_.size() != dom_->n_points()) throw std::invalid_argument("map table size != domain size");
  for (Point p : table_)
    if (p >= cod_->n_points()) throw std::invalid_argument("map value outside codomain");
}

MeasurableFn MeasurableFn::identity(SpaceRef space) {
  std::vector<Point> table(space->n_points());
  std::iota(table.begin(), table.end(), Point{0});
  return {space, space, std::move(table)};
}

MeasurableFn MeasurableFn::constant(SpaceRef dom, SpaceRef cod, Point value) {
  const auto n = dom->n_points();
  return {std::move(dom), std::move(cod), std::vector<Point>(n, value)};
}

MeasurableSet MeasurableFn::preimage(const MeasurableSet& s) const {
  require_same_space(cod_, s.space(), "preimage");
  std::vector<Point> pts;
  for (Point x = 0; x < table_.size(); ++x)
    if (s.contains_point(table_[x])) pts.push_back(x);
  return MeasurableSet::of_points(dom_, pts);
}

MeasurableFn compose(const MeasurableFn& g, const MeasurableFn& f) {
  require_same_space(f.cod(), g.dom(), "compose");
  std::vector<Point> table(f.dom()->n_points());
  for (Point x = 0; x < table.size(); ++x) table[x] = g(f(x));
  return {f.dom(), g.cod(), std::move(table)};
}

bool is_measurable(const MeasurableFn& f) {
  // Each domain atom must land inside a single codomain atom.
  const auto& dom = *f.dom();
  const auto& cod = *f.cod();
  for (const auto& block : dom.atoms()) {
    const auto target = cod.atom_of(f(block.front()));
    for (Point p : block)
      if (cod.atom_of(f(p)) != target) return false;
  }
  return true;
}

std::vector<MeasurableFn> enumerate_measurable_maps(const SpaceRef& dom, const SpaceRef& cod, std::size_t cap) {
  // A measurable map sends each domain atom into one codomain atom, with any
  // point-level assignment inside that atom.
  std::vector<MeasurableFn> out;
  std::vector<Point> table(dom->n_points(), 0);
  const auto& atoms = dom->atoms();

  std::vector<std::size_t> target(atoms.size(), 0);
  auto emit_points = [&](auto&& self, std::size_t atom_idx, std::size_t pos) -> void {
    if (atom_idx == atoms.size()) {
      if (out.size() >= cap) throw SizeCapError("more than " + std::to_string(cap) + " measurable maps");
      out.emplace_back(dom, cod, table);
      return;
    }
    const auto& block = atoms[atom_idx];
    if (pos == block.size()) {
      self(self, atom_idx + 1, 0);
      return;
    }
    for (Point q : cod->atom(target[atom_idx])) {
      table[block[pos]] = q;
      self(self, atom_idx, pos + 1);
    }
  };
  auto choose_targets = [&](auto&& self, std::size_t atom_idx) -> void {
    if (atom_idx == atoms.size()) {
      emit_points(emit_points, 0, 0);
      return;
    }
    for (std::size_t b = 0; b < cod->n_atoms(); ++b) {
      target[atom_idx] = b;
      self(self, atom_idx + 1);
    }
  };
  choose_targets(choose_targets, 0);
  return out;
}

IFunction::IFunction(SpaceRef space, std::vector<UnitRational> atom_values)
    : space_(std::move(space)), values_(std::move(atom_values)) {
  if (!space_) throw std::invalid_argument("function without a space");
  if (values_.size() != space_->n_atoms()) throw std::invalid_argument("one value per atom required");
}

IFunction IFunction::constant(SpaceRef space, const UnitRational& u) {
  const auto n = space->n_atoms();
  return {std::move(space), std::vector<UnitRational>(n, u)};
}

IFunction IFunction::from_points(SpaceRef space, const std::vector<UnitRational>& point_values) {
  if (point_values.size() != space->n_points()) throw std::invalid_argument("one value per point required");
  std::vector<UnitRational> values;
  for (const auto& block : space->atoms()) {
    for (Point p : block) {
      if (point_values[p] != point_values[block.front()]) {
        throw std::invalid_argument("function not constant on an atom; not measurable");
      }
    }
    values.push_back(point_values[block.front()]);
  }
  return {std::move(space), std::move(values)};
}

IFunction IFunction::scaled(const UnitRational& alpha) const {
  return pointwise_combine(*this, constant(space_, UnitRational::zero()), alpha);
}

bool IFunction::leq(const IFunction& g) const {
  require_same_space(space_, g.space_, "pointwise order");
  for (std::size_t a = 0; a < values_.size(); ++a)
    if (values_[a] > g.values_[a]) return false;
  return true;
}

IFunction indicator(const MeasurableSet& s) {
  std::vector<UnitRational> values;
  for (bool in : s.atom_mask()) values.push_back(in ? UnitRational::one() : UnitRational::zero());
  return {s.space(), std::move(values)};
}

IFunction pointwise_combine(const IFunction& f, const IFunction& g, const UnitRational& r) {
  require_same_space(f.space(), g.space(), "pointwise_combine");
  std::vector<UnitRational> values;
  values.reserve(f.atom_values().size());
  for (std::size_t a = 0; a < f.atom_values().size(); ++a) values.push_back(cvx_combine(f.at_atom(a), g.at_atom(a), r));
  return {f.space(), std::move(values)};
}

IFunction precompose(const IFunction& h, const MeasurableFn& f) {
  require_same_space(h.space(), f.cod(), "precompose");
  std::vector<UnitRational> point_values;
  point_values.reserve(f.dom()->n_points());
  for (Point x = 0; x < f.dom()->n_points(); ++x) point_values.push_back(h(f(x)));
  return IFunction::from_points(f.dom(), point_values);
}

Rational SimpleDecomposition::coefficient_sum() const {
  Rational sum = 0;
  for (const auto& t : terms) sum += t.coef.value();
  return sum;
}

IFunction SimpleDecomposition::recompose(const SpaceRef& space) const {
  std::vector<Rational> acc(space->n_atoms(), Rational(0));
  for (const auto& t : terms) {
    require_same_space(space, t.set.space(), "recompose");
    for (std::size_t a = 0; a < acc.size(); ++a)
      if (t.set.contains_atom(a)) acc[a] += t.coef.value();
  }
  std::vector<UnitRational> values;
  for (auto& v : acc) values.emplace_back(v);
  return {space, std::move(values)};
}

SimpleDecomposition telescoping_decompose(const IFunction& f) {
  const auto& space = f.space();
  std::vector<UnitRational> levels = f.atom_values();
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  SimpleDecomposition out;
  UnitRational previous = UnitRational::zero();
  for (const auto& level : levels) {
    std::vector<bool> mask(space->n_atoms());
    for (std::size_t a = 0; a < mask.size(); ++a) mask[a] = f.at_atom(a) >= level;
    out.terms.push_back({UnitRational(level.value() - previous.value()), MeasurableSet(space, std::move(mask))});
    previous = level;
  }
  out.terms.push_back({previous.complement(), MeasurableSet::empty(space)});
  return out;
}

SimpleDecomposition normalize(const SimpleDecomposition& d) {
  SimpleDecomposition out;
  for (const auto& t : d.terms)
    if (!t.coef.is_zero()) out.terms.push_back(t);
  return out;
}

MeasurableFn TensorProduct::constant_graph(Point yp) const {
  std::vector<Point> table(x->n_points());
  for (Point xp = 0; xp < table.size(); ++xp) table[xp] = pair(xp, yp);
  return {x, space, std::move(table)};
}

MeasurableFn TensorProduct::graph(const MeasurableFn& f) const {
  require_same_space(f.dom(), x, "graph");
  require_same_space(f.cod(), y, "graph");
  std::vector<Point> table(x->n_points());
  for (Point xp = 0; xp < table.size(); ++xp) table[xp] = pair(xp, f(xp));
  return {x, space, std::move(table)};
}

MeasurableFn TensorProduct::cograph(const MeasurableFn& g) const {
  require_same_space(g.dom(), y, "cograph");
  require_same_space(g.cod(), x, "cograph");
  std::vector<Point> table(y->n_points());
  for (Point yp = 0; yp < table.size(); ++yp) table[yp] = pair(g(yp), yp);
  return {y, space, std::move(table)};
}

MeasurableFn TensorProduct::project_x() const {
  std::vector<Point> table(space->n_points());
  for (Point p = 0; p < table.size(); ++p) table[p] = x_of(p);
  return {space, x, std::move(table)};
}

MeasurableFn TensorProduct::project_y() const {
  std::vector<Point> table(space->n_points());
  for (Point p = 0; p < table.size(); ++p) table[p] = y_of(p);
  return {space, y, std::move(table)};
}

MeasurableSet TensorProduct::rectangle(const MeasurableSet& a, const MeasurableSet& b) const {
  std::vector<Point> pts;
  for (Point xp : a.points())
    for (Point yp : b.points()) pts.push_back(pair(xp, yp));
  return MeasurableSet::of_points(space, pts);
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

TensorProduct tensor_sigma_algebra(const SpaceRef& x, const SpaceRef& y, std::size_t cap) {
  const std::size_t n = x->n_points() * y->n_points();
  if (n > cap) {
    throw SizeCapError("tensor space has " + std::to_string(n) + " points, cap is " + std::to_string(cap));
  }
  TensorProduct t{x, y, discrete_space(n)};
  UnionFind uf(n);
  for (const auto& f : enumerate_measurable_maps(x, y)) {
    for (const auto& block : x->atoms())
      for (Point p : block) uf.unite(t.pair(block.front(), f(block.front())), t.pair(p, f(p)));
  }
  for (const auto& g : enumerate_measurable_maps(y, x)) {
    for (const auto& block : y->atoms())
      for (Point p : block) uf.unite(t.pair(g(block.front()), block.front()), t.pair(g(p), p));
  }
  std::map<std::size_t, Block> classes;
  for (Point p = 0; p < n; ++p) classes[uf.find(p)].push_back(p);
  std::vector<Block> blocks;
  for (auto& [root, block] : classes) blocks.push_back(std::move(block));
  t.space = make_space(n, std::move(blocks));
  return t;
}

MeasurableFn tensor_map(const TensorProduct& from, const TensorProduct& to, const MeasurableFn& f,
                        const MeasurableFn& g) {
  require_same_space(f.dom(), from.x, "tensor_map");
  require_same_space(g.dom(), from.y, "tensor_map");
  require_same_space(f.cod(), to.x, "tensor_map");
  require_same_space(g.cod(), to.y, "tensor_map");
  std::vector<Point> table(from.space->n_points());
  for (Point p = 0; p < table.size(); ++p) table[p] = to.pair(f(from.x_of(p)), g(from.y_of(p)));
  return {from.space, to.space, std::move(table)};
}

}  // namespace giry
