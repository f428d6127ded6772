#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "giry/fixture_io.hpp"
#include "giry/measurable.hpp"
#include "giry/report.hpp"

namespace giry {

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t points = 3;
  std::size_t atoms = 0;                   // 0 lets the generator choose
  std::size_t exhaustive_denominator = 0;  // 0 means sampled measures only
  std::size_t cap_tensor = kDefaultTensorCap;
  std::size_t samples = 12;                // random cases per fixture and check
};

/// laws, lemma-basic, equivalence, codensity
const std::vector<std::string>& suite_names();

/// Fixtures used when `verify` gets none: a few canonical finite fixtures and
/// one countable one, all derived from the seed.
std::vector<Fixture> default_fixtures(const VerifyOptions& opts);

/// Runs one named suite (or "all", which concatenates every suite under the
/// name "all" with ids prefixed by their suite). Throws std::invalid_argument
/// for an unknown name.
SuiteReport run_suite(const std::string& name, std::vector<Fixture> fixtures, const VerifyOptions& opts);

}  // namespace giry
