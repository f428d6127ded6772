#include "giry/equivalence.hpp"
#include "giry/functional.hpp"
#include "giry/sampling.hpp"
#include "helpers.hpp"

using namespace giry;
using testing_support::U;

namespace {

std::vector<IFunction> extras(Rng& rng, const SpaceRef& x, int n) {
  std::vector<IFunction> out;
  for (int i = 0; i < n; ++i) out.push_back(random_function(rng, x));
  return out;
}

FunctionalOnFunctionals mixture2(const UnitRational& w, const Functional& a, const Functional& b) {
  return FunctionalOnFunctionals::from_mixture(FiniteMixture<Functional>::binary(w, a, b));
}

}  // namespace

TEST_CASE("eval examples") {
  Rng rng(1);
  const auto x = random_space(rng, 4);
  const auto f = random_function(rng, x);
  for (Point p = 0; p < 4; ++p) CHECK(eval(unit(x, p), f) == f(p));
  const auto m = random_measure(rng, x);
  for (const auto& s : all_measurable_sets(x)) CHECK(eval(Functional::canonical(m), indicator(s)) == m(s));
  const auto d2 = discrete_space(2);
  CHECK(eval(Functional::canonical(Measure::uniform(d2)), IFunction(d2, {U(0), U(1)})) == U(1, 2));
  CHECK_THROWS_AS(eval(unit(x, 0), IFunction::constant(d2, U(0))), std::invalid_argument);
}

TEST_CASE("weak averaging") {
  Rng rng(2);
  const auto x = random_space(rng, 3);
  CHECK(check_weakly_averaging(Functional::canonical(random_measure(rng, x)), rational_grid(8)).passed);
  const auto sq = check_weakly_averaging(adversarial::square_at_point(x, 0), rational_grid(2));
  CHECK_FALSE(sq.passed);
  CHECK(sq.witness == "u=1/2 G(u)=1/4");
  CHECK(check_weakly_averaging(adversarial::max_over_atoms(discrete_space(2)), rational_grid(8)).passed);
}

TEST_CASE("affinity") {
  const auto d2 = discrete_space(2);
  const IFunction f(d2, {U(1), U(0)}), g(d2, {U(0), U(1)});
  const auto v = check_affine(adversarial::max_over_atoms(d2), std::vector<AffineSample<IFunction>>{{f, g, U(1, 2)}});
  CHECK_FALSE(v.passed);
  CHECK(v.witness == "f=(1,0) g=(0,1) r=1/2 LHS=1/2 RHS=1");

  Rng rng(3);
  const auto x = random_space(rng, 4);
  std::vector<AffineSample<IFunction>> samples;
  for (int i = 0; i < 50; ++i) samples.push_back({random_function(rng, x), random_function(rng, x), random_unit(rng)});
  CHECK(check_affine(Functional::canonical(random_measure(rng, x)), samples).passed);
  for (Point p = 0; p < 4; ++p) CHECK(check_affine(unit(x, p), samples).passed);
}

TEST_CASE("limit preservation") {
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_countable_measure(rng);
    const auto g = CountableFunctional::canonical(p);
    const auto s = random_countable_set(rng);
    CHECK(check_preserves_limits(g, s, 16).passed);
  }
  // chi_S -> P(S) on finite sets but only half the mass in the limit
  const CountableMeasure p({{0, U(1, 2)}, {1, U(1, 4)}, {2, U(1, 4)}});
  const auto bad = adversarial::tail_limit(p, U(1, 2));
  const auto v = check_preserves_limits(bad, CountableSet::all(), 16);
  CHECK_FALSE(v.passed);
  CHECK(v.witness == "truncations of S stop at 1/2 after 16 members but G(chi_S)=1");

  const auto x = random_space(rng, 4);
  const auto f = random_function(rng, x);
  const auto canonical = Functional::canonical(random_measure(rng, x));
  CHECK(check_preserves_limits(canonical, f, standard_limit_chains(f)).passed);
  CHECK(check_preserves_limits(canonical, f, {{f}}).passed);
  CHECK_THROWS_AS(check_preserves_limits(canonical, f.scaled(U(1, 2)), {{f}}), std::invalid_argument);
}

TEST_CASE("unit") {
  Rng rng(5);
  const auto x = random_space(rng, 4);
  for (Point p = 0; p < 4; ++p) {
    for (const auto& s : all_measurable_sets(x)) CHECK(unit(x, p)(indicator(s)) == (s.contains_point(p) ? U(1) : U(0)));
    CHECK(run_property_gate(unit(x, p)).passed());
    CHECK(phi(unit(x, p)) == dirac(x, p));
  }
}

TEST_CASE("T pushforward") {
  Rng rng(6);
  const auto x = random_space(rng, 3), y = random_space(rng, 3);
  const auto g = gamma(random_measure(rng, x));
  CHECK(extensionally_equal(t_pushforward(MeasurableFn::identity(x), g), g, extras(rng, x, 20)).passed);
  for (int i = 0; i < 30; ++i) {
    const auto f = random_measurable_map(rng, x, y);
    for (Point p = 0; p < 3; ++p) CHECK(extensionally_equal(t_pushforward(f, unit(x, p)), unit(y, f(p))).passed);
    const auto h = gamma(random_measure(rng, x));
    CHECK(phi(t_pushforward(f, h)) == pushforward(phi(h), f));
    CHECK(run_property_gate(t_pushforward(f, h)).passed());
  }
}

TEST_CASE("T join") {
  Rng rng(7);
  const auto x = random_space(rng, 4);
  const auto g = gamma(random_measure(rng, x));
  CHECK(extensionally_equal(t_join(unit_over(g)), g, extras(rng, x, 20)).passed);
  const auto q = mixture2(U(1, 2), unit(x, 0), unit(x, 3));
  for (int i = 0; i < 30; ++i) {
    const auto f = random_function(rng, x);
    CHECK(t_join(q)(f).value() == (f(0).value() + f(3).value()) / 2);
  }
  for (int i = 0; i < 30; ++i) {
    const auto a = random_measure(rng, x), b = random_measure(rng, x);
    const auto w = random_unit(rng);
    const auto qq = mixture2(w, gamma(a), gamma(b));
    CHECK(phi(t_join(qq)) == join(MeasureOnMeasures::binary(w, a, b)));
    CHECK(run_property_gate(t_join(qq)).passed());
  }
  CHECK_THROWS_AS(t_join(FunctionalOnFunctionals([](const auto&) { return U(0); })), std::invalid_argument);
}

TEST_CASE("T monad laws extensionally on all indicators and 100 random functions") {
  Rng rng(8);
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& x : all_sigma_algebras(n)) {
      const auto ex = extras(rng, x, 100);
      const auto grid = grid_measures(x, 3);
      for (const auto& p : grid) {
        const auto g = gamma(p);
        REQUIRE(extensionally_equal(t_join(unit_over(g)), g, ex).passed);
        REQUIRE(extensionally_equal(t_join(t_lift_unit(g)), g, ex).passed);
      }
      const auto r = FunctionalOver<FunctionalOnFunctionals>::from_mixture(FiniteMixture<FunctionalOnFunctionals>::binary(
          U(1, 3), mixture2(U(1, 2), gamma(grid.front()), gamma(grid.back())),
          mixture2(U(1, 4), gamma(grid[grid.size() / 2]), unit(x, 0))));
      const auto lhs = t_join(map_over([x](const FunctionalOnFunctionals& q) { return t_join(q, x); }, r), x);
      const auto rhs = t_join(join_over(r), x);
      REQUIRE(extensionally_equal(lhs, rhs, ex).passed);
    }
}

TEST_CASE("canonical functionals are equal iff their measures are") {
  Rng rng(9);
  const auto x = random_space(rng, 4);
  const auto grid = grid_measures(x, 3);
  for (const auto& p : grid)
    for (const auto& q : grid) CHECK(extensionally_equal(gamma(p), gamma(q)).passed == (p == q));
}

TEST_CASE("lemma basic on canonical functionals") {
  Rng rng(10);
  const auto x = random_space(rng, 5);
  const auto g = gamma(random_measure(rng, x));
  for (const auto& s : all_measurable_sets(x)) CHECK(g(indicator(s.complement())).value() == 1 - g(indicator(s)).value());
  for (const auto& s : all_measurable_sets(x))
    for (const auto& t : all_measurable_sets(x))
      if ((s & t).is_empty()) CHECK(g(indicator(s | t)).value() == g(indicator(s)).value() + g(indicator(t)).value());
  CHECK(g(random_function(rng, x).scaled(U(0))) == U(0));

  std::vector<std::pair<MeasurableSet, MeasurableSet>> pairs;
  for (int i = 0; i < 100; ++i) pairs.push_back({random_set(rng, x), random_set(rng, x)});
  const auto report = lemma_basic_suite(g, finite_lemma_samples(x, pairs, extras(rng, x, 10), rational_grid(4)));
  CHECK(report.all_passed());
}

TEST_CASE("each adversary fails exactly its declared lemma items and properties") {
  Rng rng(11);
  const auto x = make_space(4, {{0, 1}, {2}, {3}});
  std::vector<std::pair<MeasurableSet, MeasurableSet>> pairs;
  for (int i = 0; i < 100; ++i) pairs.push_back({random_set(rng, x), random_set(rng, x)});
  const auto samples = finite_lemma_samples(x, pairs, extras(rng, x, 10), rational_grid(4));

  auto properties = [](const PropertyGate& pg) {
    std::vector<std::string> out;
    if (!pg.weakly_averaging) out.push_back("weakly-averaging");
    if (!pg.affine) out.push_back("affine");
    if (!pg.preserves_limits) out.push_back("preserves-limits");
    return out;
  };

  const auto mx = adversarial::max_over_atoms(x);
  CHECK(lemma_basic_suite(mx, samples).failed_items() == adversarial::max_over_atoms_declaration().lemma_items);
  CHECK(properties(run_property_gate(mx)) == adversarial::max_over_atoms_declaration().violated_properties);

  const auto sq = adversarial::square_at_point(x, 2);
  CHECK(lemma_basic_suite(sq, samples).failed_items() == adversarial::square_at_point_declaration().lemma_items);
  CHECK(properties(run_property_gate(sq)) == adversarial::square_at_point_declaration().violated_properties);

  const auto tl = adversarial::tail_limit(random_countable_measure(rng), U(1, 2));
  std::vector<std::pair<CountableSet, CountableSet>> cpairs;
  for (int i = 0; i < 100; ++i) cpairs.push_back({random_countable_set(rng), random_countable_set(rng)});
  CHECK(lemma_basic_suite(tl, countable_lemma_samples(cpairs, rational_grid(4), 16)).failed_items() ==
        adversarial::tail_limit_declaration().lemma_items);
  CHECK(check_weakly_averaging(tl, rational_grid(6)).passed);
  CHECK_FALSE(check_preserves_limits(tl, CountableSet::all(), 16).passed);
}

TEST_CASE("lemma basic item (v) on N for 100 random measures") {
  Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    const auto g = CountableFunctional::canonical(random_countable_measure(rng));
    std::vector<std::pair<CountableSet, CountableSet>> cpairs;
    for (int k = 0; k < 10; ++k) cpairs.push_back({random_countable_set(rng), random_countable_set(rng)});
    CHECK(lemma_basic_suite(g, countable_lemma_samples(cpairs, rational_grid(3), 16)).all_passed());
  }
}
