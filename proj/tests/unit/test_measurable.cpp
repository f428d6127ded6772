#include <algorithm>
#include <set>

#include "giry/countable.hpp"
#include "giry/measurable.hpp"
#include "giry/sampling.hpp"
#include "helpers.hpp"

using namespace giry;
using testing_support::U;

namespace {

// Brute-force closure of a family of point sets (bitmasks) under complement
// and union; returns the closed family.
std::set<unsigned> brute_closure(std::size_t n, std::vector<unsigned> gens) {
  const unsigned full = (1u << n) - 1;
  std::set<unsigned> fam(gens.begin(), gens.end());
  fam.insert(0);
  fam.insert(full);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<unsigned> cur(fam.begin(), fam.end());
    for (unsigned a : cur) {
      grew |= fam.insert(full & ~a).second;
      for (unsigned b : cur) grew |= fam.insert(a | b).second;
    }
  }
  return fam;
}

std::set<unsigned> family_of(const SpaceRef& s) {
  std::set<unsigned> out;
  for (const auto& m : all_measurable_sets(s)) {
    unsigned mask = 0;
    for (Point p : m.points()) mask |= 1u << p;
    out.insert(mask);
  }
  return out;
}

unsigned mask_of(std::initializer_list<Point> pts) {
  unsigned m = 0;
  for (Point p : pts) m |= 1u << p;
  return m;
}

}  // namespace

TEST_CASE("generate_sigma_algebra examples") {
  auto s = generate_sigma_algebra(2, {{0}});
  CHECK(s->atoms() == std::vector<Block>{{0}, {1}});
  s = generate_sigma_algebra(3, {});
  CHECK(s->atoms() == std::vector<Block>{{0, 1, 2}});
  s = generate_sigma_algebra(4, {{0, 1}, {1, 2}});
  CHECK(s->is_discrete());
  CHECK(family_of(s) == brute_closure(4, {mask_of({0, 1}), mask_of({1, 2})}));
}

TEST_CASE("generate_sigma_algebra agrees with brute-force closure") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    std::vector<Block> gens;
    std::vector<unsigned> masks;
    const int k = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int g = 0; g < k; ++g) {
      Block b;
      unsigned m = 0;
      for (Point p = 0; p < n; ++p)
        if (rng() & 1) {
          b.push_back(p);
          m |= 1u << p;
        }
      gens.push_back(b);
      masks.push_back(m);
    }
    const auto s = generate_sigma_algebra(n, gens);
    CHECK(family_of(s) == brute_closure(n, masks));
    // idempotent: regenerating from its own atoms changes nothing
    CHECK(*generate_sigma_algebra(n, s->atoms()) == *s);
  }
}

TEST_CASE("all sigma-algebras on n points are counted by Bell numbers") {
  CHECK(all_sigma_algebras(1).size() == 1);
  CHECK(all_sigma_algebras(2).size() == 2);
  CHECK(all_sigma_algebras(3).size() == 5);
  CHECK(all_sigma_algebras(4).size() == 15);
}

TEST_CASE("is_measurable examples") {
  Rng rng(3);
  const auto x = random_space(rng, 4);
  CHECK(is_measurable(MeasurableFn::identity(x)));
  CHECK(is_measurable(MeasurableFn::constant(x, discrete_space(3), 2)));
  // trivial two-point space onto discrete two points splits the only atom
  CHECK_FALSE(is_measurable(MeasurableFn(trivial_space(2), discrete_space(2), {0, 1})));
}

TEST_CASE("enumerate_measurable_maps matches filtering all maps") {
  for (const auto& dom : all_sigma_algebras(3))
    for (const auto& cod : all_sigma_algebras(2)) {
      std::size_t brute = 0;
      for (unsigned code = 0; code < 8; ++code) {
        std::vector<Point> t = {code & 1u, (code >> 1) & 1u, (code >> 2) & 1u};
        if (is_measurable(MeasurableFn(dom, cod, t))) ++brute;
      }
      CHECK(enumerate_measurable_maps(dom, cod).size() == brute);
    }
}

TEST_CASE("indicator examples") {
  const auto x = make_space(4, {{0, 1}, {2}, {3}});
  CHECK(indicator(MeasurableSet::full(x)) == IFunction::constant(x, U(1)));
  CHECK(indicator(MeasurableSet::empty(x)) == IFunction::constant(x, U(0)));
  for (const auto& s : all_measurable_sets(x)) {
    const auto a = indicator(s), b = indicator(s.complement());
    for (Point p = 0; p < 4; ++p) CHECK(a(p).value() + b(p).value() == 1);
  }
}

TEST_CASE("telescoping decomposition examples") {
  const auto x = discrete_space(4);
  auto d = telescoping_decompose(IFunction::constant(x, U(1)));
  REQUIRE(d.terms.size() == 2);
  CHECK(d.terms[0].coef == U(1));
  CHECK(d.terms[0].set.is_full());
  CHECK(d.terms[1].coef == U(0));
  CHECK(d.terms[1].set.is_empty());

  const auto s = MeasurableSet::of_points(x, {1, 3});
  d = telescoping_decompose(indicator(s));
  REQUIRE(d.terms.size() == 3);
  CHECK(d.terms[0].coef == U(0));
  CHECK(d.terms[0].set.is_full());
  CHECK(d.terms[1].coef == U(1));
  CHECK(d.terms[1].set == s);
  CHECK(d.terms[2].coef == U(0));
  CHECK(d.terms[2].set.is_empty());

  // 1/4 on S1 = {0}, 3/4 on S2 = {1,2}, 0 on {3}
  const IFunction f(x, {U(1, 4), U(3, 4), U(3, 4), U(0)});
  d = telescoping_decompose(f);
  REQUIRE(d.terms.size() == 4);
  CHECK(d.terms[0].coef == U(0));
  CHECK(d.terms[0].set.is_full());
  CHECK(d.terms[1].coef == U(1, 4));
  CHECK(d.terms[1].set == MeasurableSet::of_points(x, {0, 1, 2}));
  CHECK(d.terms[2].coef == U(1, 2));
  CHECK(d.terms[2].set == MeasurableSet::of_points(x, {1, 2}));
  CHECK(d.terms[3].coef == U(1, 4));
  CHECK(d.terms[3].set.is_empty());
  CHECK(d.coefficient_sum() == 1);
  CHECK(normalize(d).terms.size() == 3);
}

TEST_CASE("telescoping decomposition recomposes exactly on 1000 random functions") {
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const auto x = random_space(rng, std::uniform_int_distribution<std::size_t>(1, 8)(rng));
    const auto f = random_function(rng, x);
    const auto d = telescoping_decompose(f);
    REQUIRE(d.coefficient_sum() == 1);
    // pointwise oracle: sum of coefficients whose set contains the point
    for (Point p = 0; p < x->n_points(); ++p) {
      Rational v = 0;
      for (const auto& t : d.terms)
        if (t.set.contains_point(p)) v += t.coef.value();
      REQUIRE(v == f(p).value());
    }
    REQUIRE(normalize(d).recompose(x) == f);
  }
}

TEST_CASE("pointwise combine examples") {
  const auto x = discrete_space(2);
  const IFunction f(x, {U(0), U(1)}), g(x, {U(1), U(0)});
  CHECK(pointwise_combine(f, f, U(2, 5)) == f);
  CHECK(pointwise_combine(f, g, U(1, 3)) == IFunction(x, {U(2, 3), U(1, 3)}));
  const auto s = MeasurableSet::of_points(x, {0});
  CHECK(pointwise_combine(indicator(s), indicator(s.complement()), U(1, 2)) == IFunction::constant(x, U(1, 2)));
}

TEST_CASE("tensor of discrete spaces is the powerset") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t m = 1; n * m <= 12 && m <= 4; ++m)
      CHECK(tensor_sigma_algebra(discrete_space(n), discrete_space(m)).space->is_discrete());
}

TEST_CASE("tensor with a point is a copy of the first factor") {
  for (const auto& x : all_sigma_algebras(4)) {
    const auto t = tensor_sigma_algebra(x, discrete_space(1));
    CHECK(t.space->atoms() == x->atoms());
  }
}

TEST_CASE("tensor contains the product sigma-algebra") {
  // trivial 2-point X, discrete 2-point Y: test all 16 subsets of X x Y
  const auto x = trivial_space(2), y = discrete_space(2);
  const auto t = tensor_sigma_algebra(x, y);
  std::set<unsigned> rectangles;
  for (const auto& a : all_measurable_sets(x))
    for (const auto& b : all_measurable_sets(y)) {
      unsigned m = 0;
      for (Point xp : a.points())
        for (Point yp : b.points()) m |= 1u << t.pair(xp, yp);
      rectangles.insert(m);
    }
  const auto tensor_family = family_of(t.space);
  const auto product = brute_closure(4, {rectangles.begin(), rectangles.end()});
  for (unsigned subset = 0; subset < 16; ++subset) {
    if (product.count(subset)) CHECK(tensor_family.count(subset));
  }
  // and on every pair of small sigma-algebras
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t m = 1; m <= 3; ++m)
      for (const auto& xs : all_sigma_algebras(n))
        for (const auto& ys : all_sigma_algebras(m)) {
          const auto tt = tensor_sigma_algebra(xs, ys);
          for (const auto& a : all_measurable_sets(xs))
            for (const auto& b : all_measurable_sets(ys)) CHECK_NOTHROW(tt.rectangle(a, b));
        }
}

TEST_CASE("tensor respects the size cap") {
  CHECK_THROWS_AS(tensor_sigma_algebra(discrete_space(4), discrete_space(4)), SizeCapError);
  CHECK_NOTHROW(tensor_sigma_algebra(discrete_space(4), discrete_space(4), 16));
}

TEST_CASE("finite and cofinite sets of N form an algebra") {
  Rng rng(9);
  auto member = [](const CountableSet& s, NatPoint n) { return s.contains(n); };
  for (int i = 0; i < 300; ++i) {
    const auto a = random_countable_set(rng), b = random_countable_set(rng);
    for (NatPoint n = 0; n < 30; ++n) {
      CHECK(member(a.complement(), n) == !member(a, n));
      CHECK(member(a | b, n) == (member(a, n) || member(b, n)));
      CHECK(member(a & b, n) == (member(a, n) && member(b, n)));
    }
    CHECK((a & b).subset_of(a));
    CHECK(a.subset_of(a | b));
    CHECK(a.complement().complement() == a);
  }
}
