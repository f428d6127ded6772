#include <random>

#include "giry/convex.hpp"
#include "helpers.hpp"

using namespace giry;
using testing_support::U;

TEST_CASE("cvx_combine on the spec examples") {
  CHECK(cvx_combine(U(1), U(0), U(1, 2)) == U(1, 2));
  CHECK(cvx_combine(U(1, 3), U(2, 3), U(1, 4)) == U(7, 12));
  for (const auto& u : rational_grid(6))
    for (const auto& r : rational_grid(6)) CHECK(cvx_combine(u, u, r) == u);
}

TEST_CASE("cvx_combine agrees with a plain fraction oracle") {
  // r*u + (1-r)*v over a common denominator, in 64-bit integers
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> den(1, 30);
  for (int i = 0; i < 500; ++i) {
    const std::int64_t du = den(rng), dv = den(rng), dr = den(rng);
    const std::int64_t nu = std::uniform_int_distribution<std::int64_t>(0, du)(rng);
    const std::int64_t nv = std::uniform_int_distribution<std::int64_t>(0, dv)(rng);
    const std::int64_t nr = std::uniform_int_distribution<std::int64_t>(0, dr)(rng);
    const std::int64_t num = nr * nu * dv + (dr - nr) * nv * du;
    const std::int64_t d = dr * du * dv;
    CHECK(cvx_combine(U(nu, du), U(nv, dv), U(nr, dr)) == U(num, d));
  }
}

TEST_CASE("axioms on I hold on the whole grid with denominators up to 6") {
  const auto grid = rational_grid(6);
  for (const auto& a : grid)
    for (const auto& b : grid) {
      CHECK(cvx_combine(a, b, U(0)) == b);
      for (const auto& r : grid) CHECK(cvx_combine(a, b, r) == cvx_combine(b, a, r.complement()));
    }
  std::vector<std::array<UnitRational, 3>> triples;
  for (const auto& a : rational_grid(3))
    for (const auto& b : rational_grid(3))
      for (const auto& c : rational_grid(3)) triples.push_back({a, b, c});
  CHECK(check_axioms(UnitInterval{}, triples, grid).all_passed());
}

TEST_CASE("deformation weight") {
  CHECK_FALSE(deformation_weight(U(1), U(1)).has_value());
  // r = (1-p)q / (1-pq)
  CHECK(*deformation_weight(U(1, 2), U(1, 2)) == U(1, 3));
  CHECK(*deformation_weight(U(0), U(3, 4)) == U(3, 4));
}

TEST_CASE("parse and print") {
  CHECK(to_string(U(3, 4)) == "3/4");
  CHECK(to_string(U(1)) == "1");
  CHECK(to_string(U(2, 4)) == "1/2");
  CHECK(parse_unit("6/8") == U(3, 4));
  CHECK(parse_unit("0") == U(0));
  CHECK_THROWS_AS(parse_unit("5/4"), std::domain_error);
  CHECK_THROWS_AS(parse_unit("-1/2"), std::domain_error);
  CHECK_THROWS_AS(parse_unit("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_unit("a/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_unit(""), std::invalid_argument);
}

TEST_CASE("no silent overflow in long products") {
  UnitRational acc = U(1);
  for (int i = 0; i < 60; ++i) acc = acc * U(999999937, 1000000007);
  // numerator and denominator are far beyond 64 bits and still exact
  CHECK(acc.den() > BigInt(std::numeric_limits<std::uint64_t>::max()));
  UnitRational back = acc;
  for (int i = 0; i < 60; ++i) back = UnitRational(back.value() * make_rational(1000000007, 999999937));
  CHECK(back == U(1));
}
