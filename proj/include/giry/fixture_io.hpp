#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "giry/functional.hpp"
#include "giry/giry.hpp"
#include "giry/sampling.hpp"

namespace giry {

/**
 * Fixture text format, one item per line ('#' starts a comment):
 *
 *   points 3                      finite space on {0,1,2}
 *   atom 0: 0 1                   its atoms
 *   atom 1: 2
 *   space countable               (instead of points/atom) the space N
 *   P: atom0=1/2 atom1=1/2        a measure; on N: "P: n0=1/2 n5=1/2"
 *   function                      a function X -> I, one "atom i: value" line per atom
 *   atom 0: 1/3
 *   atom 1: 1
 *   functional canonical          integral against the first measure
 *   functional black-box max-over-atoms | square-at-point <x0> | tail-limit <w>
 *   violates affine ...           properties a black box is declared to fail
 *   lemma-items 2 3 5             identities (i)-(vi) it is declared to fail
 */
struct FunctionalSpec {
  std::string kind;  // canonical | black-box
  std::string name;  // black-box name
  std::vector<std::string> args;
  std::vector<std::string> violates;
  std::vector<int> lemma_items;
};

struct Fixture {
  std::string source;
  SpaceRef space;  // null for the countable space
  bool countable = false;
  std::vector<Measure> measures;
  std::vector<CountableMeasure> countable_measures;
  std::vector<IFunction> functions;
  std::optional<FunctionalSpec> functional;
};

class FixtureParseError : public std::runtime_error {
 public:
  FixtureParseError(const std::string& source, std::size_t line, const std::string& message)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

Fixture parse_fixture(std::istream& in, const std::string& source = "<input>");
Fixture load_fixture(const std::string& path);
std::string format_fixture(const Fixture& f);

std::string format_space(const FiniteSpace& space);
std::string format_countable_measure(const CountableMeasure& p);

/// The fixture's functional on a finite space, or nullopt.
std::optional<Functional> finite_functional(const Fixture& f);
/// The fixture's functional on N, or nullopt.
std::optional<CountableFunctional> countable_functional(const Fixture& f);

/// A random space; exactly `atoms` atoms when nonzero.
SpaceRef generate_space(Rng& rng, std::size_t points, std::size_t atoms);

/// Generated fixtures for `gen`. Kinds: space, measure, functional.
/// `adversarial` selects a named black box for kind functional.
Fixture generate_fixture(const std::string& kind, std::uint64_t seed, std::size_t points, std::size_t atoms,
                         const std::string& adversarial = "");

}  // namespace giry
