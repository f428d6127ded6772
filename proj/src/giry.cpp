#include "giry/giry.hpp"

#include <numeric>
#include <stdexcept>

namespace giry {

Measure::Measure(SpaceRef space, std::vector<UnitRational> atom_masses)
    : space_(std::move(space)), masses_(std::move(atom_masses)) {
  if (!space_) throw std::invalid_argument("measure without a space");
  if (masses_.size() != space_->n_atoms()) throw std::invalid_argument("one mass per atom required");
  Rational sum = 0;
  for (const auto& m : masses_) sum += m.value();
  if (sum != 1) throw std::invalid_argument("measure masses sum to " + to_string(sum) + ", not 1");
}

Measure Measure::from_weights(SpaceRef space, const std::vector<std::int64_t>& weights) {
  if (weights.size() != space->n_atoms()) throw std::invalid_argument("one weight per atom required");
  std::int64_t total = 0;
  for (auto w : weights) {
    if (w < 0) throw std::invalid_argument("negative weight");
    total += w;
  }
  if (total == 0) throw std::invalid_argument("weights sum to zero");
  std::vector<UnitRational> masses;
  for (auto w : weights) masses.emplace_back(w, total);
  return {std::move(space), std::move(masses)};
}

Measure Measure::uniform(SpaceRef space) {
  return from_weights(space, std::vector<std::int64_t>(space->n_atoms(), 1));
}

UnitRational Measure::operator()(const MeasurableSet& s) const {
  require_same_space(space_, s.space(), "measure of set");
  Rational sum = 0;
  for (std::size_t a = 0; a < masses_.size(); ++a)
    if (s.contains_atom(a)) sum += masses_[a].value();
  return UnitRational(sum);
}

std::string to_string(const Measure& p) {
  std::string out = "P:";
  for (std::size_t a = 0; a < p.atom_masses().size(); ++a)
    out += " atom" + std::to_string(a) + "=" + to_string(p.mass_of_atom(a));
  return out;
}

Measure dirac(const SpaceRef& space, Point x) {
  std::vector<UnitRational> masses(space->n_atoms());
  masses.at(space->atom_of(x)) = UnitRational::one();
  return {space, std::move(masses)};
}

Measure pushforward(const Measure& p, const MeasurableFn& f) {
  require_same_space(p.space(), f.dom(), "pushforward");
  if (!is_measurable(f)) throw std::invalid_argument("pushforward along a non-measurable map");
  const auto& dom = *f.dom();
  const auto& cod = *f.cod();
  std::vector<Rational> acc(cod.n_atoms(), Rational(0));
  for (std::size_t a = 0; a < dom.n_atoms(); ++a) acc[cod.atom_of(f(dom.representative(a)))] += p.mass_of_atom(a).value();
  std::vector<UnitRational> masses;
  for (auto& v : acc) masses.emplace_back(v);
  return {f.cod(), std::move(masses)};
}

UnitRational integrate(const Measure& p, const IFunction& f) {
  require_same_space(p.space(), f.space(), "integrate");
  Rational sum = 0;
  for (std::size_t a = 0; a < f.atom_values().size(); ++a) sum += p.mass_of_atom(a).value() * f.at_atom(a).value();
  return UnitRational(sum);
}

Measure join(const MeasureOnMeasures& q) {
  const auto& space = q.terms().front().value.space();
  std::vector<Rational> acc(space->n_atoms(), Rational(0));
  for (const auto& t : q.terms()) {
    require_same_space(space, t.value.space(), "join");
    for (std::size_t a = 0; a < acc.size(); ++a) acc[a] += t.weight.value() * t.value.mass_of_atom(a).value();
  }
  std::vector<UnitRational> masses;
  for (auto& v : acc) masses.emplace_back(v);
  return {space, std::move(masses)};
}

MeasureOnMeasures lift_dirac(const Measure& p) {
  std::vector<MeasureOnMeasures::Term> terms;
  const auto& space = p.space();
  for (std::size_t a = 0; a < space->n_atoms(); ++a) {
    if (!p.mass_of_atom(a).is_zero()) terms.push_back({p.mass_of_atom(a), dirac(space, space->representative(a))});
  }
  return MeasureOnMeasures(std::move(terms));
}

Measure strength(const Measure& p, const TensorProduct& xy, Point y) {
  require_same_space(p.space(), xy.x, "strength");
  if (y >= xy.y->n_points()) throw std::out_of_range("strength: point outside Y");
  return pushforward(p, xy.constant_graph(y));
}

Measure strength(const Measure& p, const SpaceRef& y_space, Point y, std::size_t cap) {
  return strength(p, tensor_sigma_algebra(p.space(), y_space, cap), y);
}

std::function<Measure(const Measure&)> st_map(const MeasurableFn& f) {
  if (!is_measurable(f)) throw std::invalid_argument("st_map of a non-measurable map");
  return [f](const Measure& p) { return pushforward(p, f); };
}

Measure st_map_three_stage(const MeasurableFn& f, const Measure& p, std::size_t cap) {
  require_same_space(p.space(), f.dom(), "st_map_three_stage");
  if (!is_measurable(f)) throw std::invalid_argument("st_map of a non-measurable map");
  const auto& x = f.dom();
  const auto& y = f.cod();
  const std::size_t max_family = cap / x->n_points();
  if (max_family == 0) throw SizeCapError("X alone exceeds the tensor cap");

  std::vector<MeasurableFn> family{f};
  for (const auto& g : enumerate_measurable_maps(x, y)) {
    if (family.size() >= max_family) break;
    if (g.table() != f.table()) family.push_back(g);
  }

  // Y^X carries the sigma-algebra generated by the evaluations ev_x.
  std::vector<Block> generators;
  for (Point xp = 0; xp < x->n_points(); ++xp) {
    for (const auto& b : y->atoms()) {
      Block gen;
      for (std::size_t i = 0; i < family.size(); ++i)
        if (y->atom_of(family[i](xp)) == y->atom_of(b.front())) gen.push_back(i);
      generators.push_back(std::move(gen));
    }
  }
  const SpaceRef function_space = generate_sigma_algebra(family.size(), generators);
  const TensorProduct xf = tensor_sigma_algebra(x, function_space, cap);

  // Stage 1 pairs P with f (index 0); stage 2 is the strength.
  const Measure paired = strength(p, xf, 0);

  // Stage 3: the evaluation map (x, g) |-> g(x).
  std::vector<Point> ev_table(xf.space->n_points());
  for (Point q = 0; q < ev_table.size(); ++q) ev_table[q] = family[xf.y_of(q)](xf.x_of(q));
  const MeasurableFn ev(xf.space, y, std::move(ev_table));
  if (!is_measurable(ev)) throw std::logic_error("evaluation map is not measurable on X (x) Y^X");
  return pushforward(paired, ev);
}

std::function<UnitRational(const Measure&)> integral_operator(const IFunction& f) {
  return [f](const Measure& p) { return integrate(p, f); };
}

UnitRational integral_via_two(const IFunction& f, const Measure& p) {
  const auto two = discrete_space(2);
  std::vector<Point> table(f.space()->n_points());
  for (Point x = 0; x < table.size(); ++x) {
    if (f(x).is_one()) {
      table[x] = 1;
    } else if (f(x).is_zero()) {
      table[x] = 0;
    } else {
      throw std::invalid_argument("integral_via_two needs a {0,1}-valued function");
    }
  }
  // G(2) = I sends delta_0 +_alpha delta_1 to alpha; evaluating at {1} gives 1 - alpha.
  const Measure on_two = st_map_three_stage(MeasurableFn(f.space(), two, std::move(table)), p);
  const UnitRational alpha = on_two.mass_of_atom(0);
  return alpha.complement();
}

CountableMeasure::CountableMeasure(std::map<NatPoint, UnitRational> masses) {
  Rational sum = 0;
  for (auto& [n, m] : masses) {
    sum += m.value();
    if (!m.is_zero()) masses_.emplace(n, m);
  }
  if (sum != 1) throw std::invalid_argument("countable measure masses sum to " + to_string(sum) + ", not 1");
}

UnitRational CountableMeasure::operator()(const CountableSet& s) const {
  Rational sum = 0;
  for (const auto& [n, m] : masses_)
    if (s.contains(n)) sum += m.value();
  return UnitRational(sum);
}

UnitRational integrate(const CountableMeasure& p, const CountableIFunction& f) {
  Rational sum = 0;
  for (const auto& [n, m] : p.masses()) sum += m.value() * f(n).value();
  // Finitely supported: the tail carries no mass.
  return UnitRational(sum);
}

}  // namespace giry
