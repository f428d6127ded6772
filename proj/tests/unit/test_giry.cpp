#include "giry/equivalence.hpp"
#include "giry/giry.hpp"
#include "giry/sampling.hpp"
#include "helpers.hpp"

using namespace giry;
using testing_support::U;

TEST_CASE("pushforward examples") {
  Rng rng(1);
  const auto x = random_space(rng, 4);
  const auto p = random_measure(rng, x);
  CHECK(pushforward(p, MeasurableFn::identity(x)) == p);
  const auto y = discrete_space(3);
  CHECK(pushforward(p, MeasurableFn::constant(x, y, 1)) == dirac(y, 1));
  const auto d3 = discrete_space(3), d2 = discrete_space(2);
  CHECK(pushforward(Measure::uniform(d3), MeasurableFn(d3, d2, {0, 0, 1})) == Measure(d2, {U(2, 3), U(1, 3)}));
  CHECK_THROWS(pushforward(Measure::uniform(trivial_space(2)), MeasurableFn(trivial_space(2), d2, {0, 1})));
}

TEST_CASE("dirac examples") {
  const auto x = make_space(4, {{0, 2}, {1}, {3}});
  for (Point p = 0; p < 4; ++p)
    for (const auto& s : all_measurable_sets(x)) CHECK(dirac(x, p)(s) == (s.contains_point(p) ? U(1) : U(0)));
  for (const auto& dom : all_sigma_algebras(3))
    for (const auto& cod : all_sigma_algebras(3))
      for (const auto& f : enumerate_measurable_maps(dom, cod))
        for (Point p = 0; p < 3; ++p) CHECK(pushforward(dirac(dom, p), f) == dirac(cod, f(p)));
  CHECK(alpha_of_measure(dirac(discrete_space(2), 0)) == U(1));
}

TEST_CASE("integrate examples") {
  Rng rng(2);
  const auto x = random_space(rng, 5);
  const auto f = random_function(rng, x);
  for (Point p = 0; p < 5; ++p) CHECK(integrate(dirac(x, p), f) == f(p));
  const auto q = random_measure(rng, x);
  for (const auto& s : all_measurable_sets(x)) CHECK(integrate(q, indicator(s)) == q(s));
  const auto d2 = discrete_space(2);
  CHECK(integrate(Measure::uniform(d2), IFunction(d2, {U(0), U(1)})) == U(1, 2));
}

TEST_CASE("join examples") {
  const auto x = discrete_space(3);
  const auto p = Measure::from_weights(x, {1, 2, 3});
  CHECK(join(MeasureOnMeasures::point_mass(p)) == p);
  CHECK(join(MeasureOnMeasures::binary(U(1, 2), dirac(x, 0), dirac(x, 2))) == Measure(x, {U(1, 2), U(0), U(1, 2)}));
  CHECK(join(lift_dirac(p)) == p);
}

TEST_CASE("Giry monad laws on every sigma-algebra of at most 3 points and grid measures up to denominator 4") {
  std::size_t cases = 0;
  Rng rng(3);
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& x : all_sigma_algebras(n)) {
      const auto grid = grid_measures(x, 4);
      for (const auto& p : grid) {
        REQUIRE(join(MeasureOnMeasures::point_mass(p)) == p);
        REQUIRE(join(lift_dirac(p)) == p);
        ++cases;
      }
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& a = grid[i];
        const auto& b = grid[(i * 5 + 1) % grid.size()];
        const auto& c = grid[(i * 3 + 2) % grid.size()];
        const FiniteMixture<MeasureOnMeasures> r({{U(1, 3), MeasureOnMeasures::binary(U(1, 4), a, b)},
                                                  {U(2, 3), MeasureOnMeasures::binary(U(1, 2), b, c)}});
        REQUIRE(join(r.map([](const MeasureOnMeasures& q) { return join(q); })) == join(flatten(r)));
      }
    }
  // 1 + (1 + 7) + (1 + 3*7 + 22): Farey(4) has 7 points, the denominator-4 grid on 3 atoms 22
  CHECK(cases == 53);
}

TEST_CASE("strength") {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_space(rng, 2), y = random_space(rng, 2);
    const auto xy = tensor_sigma_algebra(x, y);
    const Point yp = rng() % 2, xp = rng() % 2;
    CHECK(strength(dirac(x, xp), xy, yp) == dirac(xy.space, xy.pair(xp, yp)));
    const auto p = random_measure(rng, x);
    const auto tau = strength(p, xy, yp);
    CHECK(pushforward(tau, xy.project_x()) == p);
    CHECK(pushforward(tau, xy.project_y()) == dirac(y, yp));
    const auto y2 = random_space(rng, 2), x2 = random_space(rng, 2);
    const auto g = random_measurable_map(rng, y, y2);
    const auto f = random_measurable_map(rng, x, x2);
    const auto xy2 = tensor_sigma_algebra(x, y2), x2y = tensor_sigma_algebra(x2, y);
    CHECK(pushforward(tau, tensor_map(xy, xy2, MeasurableFn::identity(x), g)) == strength(p, xy2, g(yp)));
    CHECK(pushforward(tau, tensor_map(xy, x2y, f, MeasurableFn::identity(y))) == strength(pushforward(p, f), x2y, yp));
  }
}

TEST_CASE("st_map") {
  Rng rng(5);
  const auto x = random_space(rng, 3);
  const auto p = random_measure(rng, x);
  CHECK(st_map(MeasurableFn::identity(x))(p) == p);
  const auto y = random_space(rng, 3);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_measurable_map(rng, x, y);
    for (Point q = 0; q < 3; ++q) CHECK(st_map(f)(dirac(x, q)) == dirac(y, f(q)));
    const auto m = random_measure(rng, x);
    CHECK(st_map_three_stage(f, m) == pushforward(m, f));
  }
}

TEST_CASE("integral operator") {
  Rng rng(6);
  const auto x = random_space(rng, 4);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_measure(rng, x);
    for (const auto& s : all_measurable_sets(x)) CHECK(integral_operator(indicator(s))(p) == p(s));
    const auto u = random_unit(rng);
    CHECK(integral_operator(IFunction::constant(x, u))(p) == u);
    const auto f = random_function(rng, x);
    for (Point q = 0; q < 4; ++q) CHECK(integral_operator(f)(dirac(x, q)) == f(q));
    for (const auto& s : all_measurable_sets(x)) CHECK(integral_via_two(indicator(s), p) == p(s));
  }
  CHECK_THROWS(integral_via_two(IFunction::constant(x, U(1, 2)), Measure::uniform(x)));
}

TEST_CASE("countable measures are additive over singleton covers") {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_countable_measure(rng);
    const auto s = random_countable_set(rng);
    Rational partial = 0;
    for (NatPoint n : s.first_members(40)) partial += p(CountableSet::singleton(n)).value();
    CHECK(partial == p(s).value());
    CHECK(p(CountableSet::all()) == U(1));
    CHECK(integrate(p, indicator(s)) == p(s));
  }
}
