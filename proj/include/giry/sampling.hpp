#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "giry/countable.hpp"
#include "giry/giry.hpp"
#include "giry/measurable.hpp"

namespace giry {

/// All fixture generation is seeded through this engine so runs replay exactly.
using Rng = std::mt19937_64;

/// k/d with d uniform in [1, max_den] and k uniform in [0, d].
UnitRational random_unit(Rng& rng, std::int64_t max_den = 12);

/// A uniformly random set partition of {0..n_points-1} (restricted growth string).
SpaceRef random_space(Rng& rng, std::size_t n_points);

/// Integer weights in [0, max_weight] per atom, at least one positive.
Measure random_measure(Rng& rng, const SpaceRef& space, std::int64_t max_weight = 6);

IFunction random_function(Rng& rng, const SpaceRef& space, std::int64_t max_den = 12);
MeasurableSet random_set(Rng& rng, const SpaceRef& space);

/// A measurable map: each domain atom is sent to one random codomain point.
MeasurableFn random_measurable_map(Rng& rng, const SpaceRef& dom, const SpaceRef& cod);

/// Support drawn from {0..support_bound-1}.
CountableMeasure random_countable_measure(Rng& rng, NatPoint support_bound = 8, std::int64_t max_weight = 6);
/// Finite or cofinite with equal probability, listed points below `bound`.
CountableSet random_countable_set(Rng& rng, NatPoint bound = 10);

/// Every measure whose masses are k_i/d for a single d <= max_den,
/// deduplicated, in a fixed order.
std::vector<Measure> grid_measures(const SpaceRef& space, std::size_t max_den);

}  // namespace giry
