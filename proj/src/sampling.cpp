#include "giry/sampling.hpp"

#include <algorithm>

namespace giry {

namespace {

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

}  // namespace

UnitRational random_unit(Rng& rng, std::int64_t max_den) {
  const std::int64_t d = uniform_int(rng, 1, max_den);
  return {uniform_int(rng, 0, d), d};
}

SpaceRef random_space(Rng& rng, std::size_t n_points) {
  if (n_points == 0) throw std::invalid_argument("random_space needs at least one point");
  std::vector<Block> blocks;
  for (Point p = 0; p < n_points; ++p) {
    const auto choice = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(blocks.size())));
    if (choice == blocks.size()) {
      blocks.push_back({p});
    } else {
      blocks[choice].push_back(p);
    }
  }
  return make_space(n_points, std::move(blocks));
}

Measure random_measure(Rng& rng, const SpaceRef& space, std::int64_t max_weight) {
  std::vector<std::int64_t> w(space->n_atoms());
  for (auto& x : w) x = uniform_int(rng, 0, max_weight);
  if (std::all_of(w.begin(), w.end(), [](auto x) { return x == 0; })) {
    w[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(w.size()) - 1))] = 1;
  }
  return Measure::from_weights(space, w);
}

IFunction random_function(Rng& rng, const SpaceRef& space, std::int64_t max_den) {
  std::vector<UnitRational> values;
  for (std::size_t a = 0; a < space->n_atoms(); ++a) values.push_back(random_unit(rng, max_den));
  return {space, std::move(values)};
}

MeasurableSet random_set(Rng& rng, const SpaceRef& space) {
  std::vector<bool> mask(space->n_atoms());
  for (std::size_t a = 0; a < mask.size(); ++a) mask[a] = uniform_int(rng, 0, 1) == 1;
  return {space, std::move(mask)};
}

MeasurableFn random_measurable_map(Rng& rng, const SpaceRef& dom, const SpaceRef& cod) {
  std::vector<Point> table(dom->n_points());
  for (const auto& atom : dom->atoms()) {
    const auto target = static_cast<Point>(uniform_int(rng, 0, static_cast<std::int64_t>(cod->n_points()) - 1));
    for (Point p : atom) table[p] = target;
  }
  return {dom, cod, std::move(table)};
}

CountableMeasure random_countable_measure(Rng& rng, NatPoint support_bound, std::int64_t max_weight) {
  std::vector<std::int64_t> w(support_bound);
  std::int64_t total = 0;
  for (auto& x : w) total += (x = uniform_int(rng, 0, max_weight));
  if (total == 0) {
    w[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(support_bound) - 1))] = 1;
    total = 1;
  }
  std::map<NatPoint, UnitRational> masses;
  for (NatPoint n = 0; n < support_bound; ++n)
    if (w[n] > 0) masses.emplace(n, UnitRational(w[n], total));
  return CountableMeasure(std::move(masses));
}

CountableSet random_countable_set(Rng& rng, NatPoint bound) {
  std::vector<NatPoint> listed;
  for (NatPoint n = 0; n < bound; ++n)
    if (uniform_int(rng, 0, 1) == 1) listed.push_back(n);
  return uniform_int(rng, 0, 1) == 1 ? CountableSet::cofinite(std::move(listed))
                                     : CountableSet::finite(std::move(listed));
}

std::vector<Measure> grid_measures(const SpaceRef& space, std::size_t max_den) {
  const std::size_t n = space->n_atoms();
  std::vector<Measure> out;
  std::vector<std::int64_t> parts(n);
  for (std::size_t d = 1; d <= max_den; ++d) {
    // Compositions of d into n non-negative parts.
    auto rec = [&](auto&& self, std::size_t i, std::int64_t left) -> void {
      if (i + 1 == n) {
        parts[i] = left;
        Measure m = Measure::from_weights(space, parts);
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(std::move(m));
        return;
      }
      for (std::int64_t k = 0; k <= left; ++k) {
        parts[i] = k;
        self(self, i + 1, left - k);
      }
    };
    rec(rec, 0, static_cast<std::int64_t>(d));
  }
  return out;
}

}  // namespace giry
