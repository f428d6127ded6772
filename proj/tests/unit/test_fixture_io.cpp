#include <sstream>

#include "giry/fixture_io.hpp"
#include "giry/report.hpp"
#include "helpers.hpp"

using namespace giry;
using testing_support::U;

namespace {

Fixture parse(const std::string& text) {
  std::istringstream in(text);
  return parse_fixture(in, "test");
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const FixtureParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("parse a finite fixture") {
  const auto f = parse(
      "# comment\n"
      "points 3\n"
      "atom 0: 0 2\n"
      "atom 1: 1\n"
      "P: atom0=1/3 atom1=2/3\n"
      "function\n"
      "atom 0: 1/4\n"
      "atom 1: 1\n"
      "functional canonical\n");
  REQUIRE(f.space);
  CHECK(f.space->atoms() == std::vector<Block>{{0, 2}, {1}});
  REQUIRE(f.measures.size() == 1);
  CHECK(f.measures[0].mass_of_atom(1) == U(2, 3));
  REQUIRE(f.functions.size() == 1);
  CHECK(f.functions[0](2) == U(1, 4));
  REQUIRE(finite_functional(f).has_value());
  CHECK(finite_functional(f)->certified());
}

TEST_CASE("parse a countable fixture with a declared black box") {
  const auto f = parse(
      "space countable\n"
      "P: n0=1/2 n5=1/2\n"
      "functional black-box tail-limit 1/2\n"
      "violates preserves-limits\n"
      "lemma-items 5\n");
  CHECK(f.countable);
  REQUIRE(f.countable_measures.size() == 1);
  CHECK(f.countable_measures[0](CountableSet::singleton(5)) == U(1, 2));
  CHECK(f.functional->violates == std::vector<std::string>{"preserves-limits"});
  CHECK(f.functional->lemma_items == std::vector<int>{5});
  CHECK_FALSE(countable_functional(f)->certified());
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(error_line("points 2\natom 0: 0\natom 1: 1 x\n") == 3);
  CHECK(error_line("points 2\natom 0: 0 1\nP: atom0=1/2\n") == 3);
  CHECK(error_line("points 2\natom 0: 0\n") == 1);  // point 1 in no atom; reported at the block start
  CHECK(error_line("points 2\natom 0: 0 1\nfrobnicate\n") == 3);
  CHECK(error_line("points 2\natom 0: 0 1\nfunction\natom 0: 3/2\n") == 4);
  CHECK(error_line("points 0\n") == 1);
  CHECK(error_line("P: atom0=1\n") == 1);
  CHECK(error_line("points 2\natom 0: 0 1\nfunctional canonical\n") == 3);
  CHECK(error_line("points 2\natom 0: 0 1\nlemma-items 7\n") == 3);
}

TEST_CASE("generated fixtures are deterministic and round-trip through the text format") {
  for (const std::string kind : {"space", "measure", "functional"})
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto a = format_fixture(generate_fixture(kind, seed, 5, 0));
      CHECK(a == format_fixture(generate_fixture(kind, seed, 5, 0)));
      CHECK(format_fixture(parse(a)) == a);
    }
  for (const std::string adv : {"max-over-atoms", "square-at-point", "tail-limit"}) {
    const auto a = format_fixture(generate_fixture("functional", 3, 4, 3, adv));
    CHECK(format_fixture(parse(a)) == a);
  }
}

TEST_CASE("a measure on a one-atom space has mass 1") {
  const auto f = generate_fixture("measure", 9, 3, 1);
  CHECK(format_fixture(f).find("P: atom0=1\n") != std::string::npos);
}

TEST_CASE("generation enforces size caps") {
  CHECK_THROWS_AS(generate_fixture("space", 1, 65, 0), SizeCapError);
  CHECK_THROWS_AS(generate_fixture("space", 1, 0, 0), SizeCapError);
  CHECK_THROWS_AS(generate_fixture("space", 1, 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(generate_fixture("bogus", 1, 3, 0), std::invalid_argument);
}

TEST_CASE("report runner keeps order, times checks and turns exceptions into witnesses") {
  std::vector<CheckSpec> specs;
  for (int i = 0; i < 20; ++i) {
    specs.push_back({"c" + std::to_string(i), [i] {
                       CheckOutcome o;
                       o.cases = static_cast<std::size_t>(i);
                       if (i == 3) o.fail("three");
                       if (i == 5) throw std::runtime_error("boom");
                       if (i == 7) return CheckOutcome::skipped("not today");
                       return o;
                     }});
  }
  const auto r = run_checks("demo", specs);
  REQUIRE(r.checks.size() == 20);
  for (int i = 0; i < 20; ++i) CHECK(r.checks[i].id == "c" + std::to_string(i));
  CHECK(r.checks[3].status == Status::fail);
  CHECK(r.checks[3].witness == "three");
  CHECK(r.checks[5].witness == "exception: boom");
  CHECK(r.checks[7].status == Status::skipped);
  CHECK(r.failures() == 2);
  const auto j = r.to_json();
  CHECK(j["counts"]["fail"] == 2);
  CHECK(j["counts"]["skipped"] == 1);
  CHECK(j["checks"][3]["witness"] == "three");
  CHECK_FALSE(j["checks"][0].contains("witness"));
}
