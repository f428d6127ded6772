#include "giry/codensity.hpp"
#include "giry/equivalence.hpp"
#include "helpers.hpp"

using namespace giry;
using testing_support::U;

namespace {

SimplexPoint sp(std::vector<UnitRational> c) { return SimplexPoint(std::move(c)); }

AffineMap<Simplex> identity_map(std::size_t n) {
  std::vector<SimplexPoint> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(SimplexPoint::vertex(n, i));
  return {Simplex{n}, images};
}

}  // namespace

TEST_CASE("iota on arrows") {
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + rng() % 2, m = 2 + rng() % 2;
    const auto b = random_simplex_point(rng, n);
    const auto homs = standard_homs(rng, m, 4);
    const auto k = random_affine_map(rng, n, m);
    const auto K = IotaElement::canonical(b);
    CHECK(iota_equal(iota_arrow(identity_map(n), K), K, standard_homs(rng, n, 4)).passed);
    CHECK(iota_equal(iota_arrow(k, K), IotaElement::canonical(apply_affine(k, b)), homs).passed);
    // ev_{g o k}(K) = K(g o k)
    const auto g = random_hom(rng, m);
    CHECK(iota_arrow(k, K)(g) == K(precompose_hom(g, k)));
    CHECK(K(precompose_hom(g, k)) == apply_hom(g, apply_affine(k, b)));
  }
}

TEST_CASE("hat examples") {
  Rng rng(2);
  const auto x = random_space(rng, 4);
  const auto b = sp({U(1, 3), U(1, 6), U(1, 2)});
  const SliceObject constant = slice_from_points(x, Base::simplex(3), std::vector<IotaElement>(4, IotaElement::canonical(b)), {});
  const HomParam h = {U(1), U(1, 2), U(0)};
  CHECK(hat(constant, h) == IFunction::constant(x, U(5, 12)));

  const auto gamma_fn = random_function(rng, x);
  CHECK(hat(prime(gamma_fn), identity_on_interval()) == gamma_fn);

  const auto d2 = discrete_space(2);
  const auto f = slice_from_points(d2, Base::simplex(2), {IotaElement::canonical(SimplexPoint::vertex(2, 0)),
                                                          IotaElement::canonical(SimplexPoint::vertex(2, 1))},
                                   standard_homs(rng, 2, 2));
  CHECK(hat(f, {U(1, 4), U(3, 4)}) == IFunction(d2, {U(1, 4), U(3, 4)}));
}

TEST_CASE("slice maps must be constant on atoms") {
  Rng rng(3);
  const auto x = trivial_space(2);
  CHECK_THROWS_AS(slice_from_points(x, Base::simplex(2),
                                    {IotaElement::canonical(SimplexPoint::vertex(2, 0)),
                                     IotaElement::canonical(SimplexPoint::vertex(2, 1))},
                                    standard_homs(rng, 2, 0)),
                  std::invalid_argument);
}

TEST_CASE("prime examples") {
  const auto x = discrete_space(2);
  const auto gp = prime(IFunction::constant(x, U(2, 7)));
  for (Point p = 0; p < 2; ++p) CHECK(gp(p)(identity_on_interval()) == U(2, 7));
  const auto g2 = prime(IFunction(x, {U(0), U(1)}));
  for (Point p = 0; p < 2; ++p) CHECK(g2(p)(hom_of_endo(AffineEndoI::constant(U(1, 2)))) == U(1, 2));
  CHECK(hat(g2, {U(1, 4), U(3, 4)}) == IFunction(x, {U(1, 4), U(3, 4)}));
}

TEST_CASE("cone legs") {
  Rng rng(4);
  const auto x = random_space(rng, 4);
  for (int i = 0; i < 30; ++i) {
    const Base b = Base::simplex(2 + rng() % 3);
    const auto f = random_slice(rng, x, b);
    const auto homs = standard_homs(rng, b.dim, 3);
    for (Point p = 0; p < 4; ++p) CHECK(iota_equal(lambda_leg(f, unit(x, p)), f(p), homs).passed);
    const auto pt = random_simplex_point(rng, b.dim);
    const SliceObject constant{x, b, std::vector<IotaElement>(x->n_atoms(), IotaElement::canonical(pt))};
    CHECK(iota_equal(lambda_leg(constant, gamma(random_measure(rng, x))), IotaElement::canonical(pt), homs).passed);
  }
}

TEST_CASE("cone commutation on 500 sampled triples over simplices and I") {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto x = random_space(rng, 1 + rng() % 4);
    const std::size_t n = 1 + rng() % 4, m = 1 + rng() % 4;
    const Base from = n == 1 ? Base::interval() : Base::simplex(n);
    const Base to = m == 1 ? Base::interval() : Base::simplex(m);
    const auto f = random_slice(rng, x, from);
    const auto k = random_affine_map(rng, from.dim, to.dim);
    REQUIRE(check_cone_condition(lambda_cone(gamma(random_measure(rng, x))), f, k, to, standard_homs(rng, to.dim, 100)).passed);
  }
}

TEST_CASE("a cone that ignores arrows fails commutation with a witness") {
  Rng rng(6);
  const auto x = random_space(rng, 3);
  const ConeAtPoint broken = [](const SliceObject& f) {
    return IotaElement::black_box(f.target.dim, "first-coordinate", [](const HomParam& h) { return h[0]; });
  };
  const auto f = random_slice(rng, x, Base::simplex(2));
  const AffineMap<Simplex> swap{Simplex{2}, {SimplexPoint::vertex(2, 1), SimplexPoint::vertex(2, 0)}};
  const auto v = check_cone_condition(broken, f, swap, Base::simplex(2), {{U(1), U(0)}});
  CHECK_FALSE(v.passed);
  CHECK(v.witness.find("omega_g[h]=1") != std::string::npos);
}

TEST_CASE("theta recovers theta0 and is the identity on the lambda cone") {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto x = random_space(rng, 1 + rng() % 4);
    const auto theta0 = gamma(random_measure(rng, x));
    CHECK(extensionally_equal(theta_mediator(lambda_cone(theta0), x), theta0).passed);
    const auto u = unit(x, 0);
    CHECK(extensionally_equal(theta_mediator(lambda_cone(u), x), u).passed);
  }
}

TEST_CASE("theta built from canonical cones passes the three property checks") {
  Rng rng(8);
  for (int i = 0; i < 10; ++i) {
    const auto x = random_space(rng, 3);
    std::vector<IFunction> gammas;
    for (int k = 0; k < 3; ++k) gammas.push_back(random_function(rng, x, 6));
    const auto report = check_theta(lambda_cone(gamma(random_measure(rng, x))), x, gammas, rational_grid(3), standard_homs(rng, 2, 2));
    CHECK(report.all_passed());
  }
}

TEST_CASE("theta of the multiplication cone is t_join") {
  Rng rng(9);
  for (int i = 0; i < 30; ++i) {
    const auto x = random_space(rng, 3);
    const auto q = FunctionalOnFunctionals::from_mixture(
        FiniteMixture<Functional>::binary(random_unit(rng), gamma(random_measure(rng, x)), unit(x, 1)));
    CHECK(extensionally_equal(theta_mediator(multiplication_cone(q), x), t_join(q)).passed);
  }
}

TEST_CASE("epsilon") {
  Rng rng(10);
  std::vector<IotaElement> elements = {IotaElement::canonical(SimplexPoint::vertex(3, 0)),
                                       IotaElement::canonical(sp({U(1, 2), U(1, 4), U(1, 4)})),
                                       IotaElement::canonical(sp({U(0), U(1, 3), U(2, 3)}))};
  const auto fixture = make_iota_fixture(Base::simplex(3), elements, standard_homs(rng, 3, 0));
  REQUIRE(fixture.space->is_discrete());
  const auto homs = standard_homs(rng, 3, 10);
  for (Point p = 0; p < 3; ++p) CHECK(iota_equal(epsilon(fixture, unit(fixture.space, p)), elements[p], homs).passed);
  const auto mix = combine_functionals(unit(fixture.space, 1), unit(fixture.space, 2), U(1, 2));
  for (const auto& h : homs)
    CHECK(epsilon(fixture, mix)(h).value() == (elements[1](h).value() + elements[2](h).value()) / 2);

  for (int i = 0; i < 200; ++i) {
    const std::size_t m = 2 + rng() % 3;
    REQUIRE(check_epsilon_naturality(fixture, random_affine_map(rng, 3, m), Base::simplex(m), standard_homs(rng, m, 2),
                                     gamma(random_measure(rng, fixture.space)))
                .passed);
  }
}

TEST_CASE("an iota fixture that cannot separate its points is rejected") {
  const auto e = IotaElement::canonical(sp({U(1, 2), U(1, 2)}));
  const auto probe_blind = std::vector<HomParam>{{U(1, 3), U(1, 3)}};
  CHECK_THROWS_AS(make_iota_fixture(Base::simplex(2), {IotaElement::canonical(SimplexPoint::vertex(2, 0)),
                                                       IotaElement::canonical(SimplexPoint::vertex(2, 1))},
                                    probe_blind),
                  FixtureTooSmall);
  CHECK_THROWS_AS(make_iota_fixture(Base::simplex(2), {e, e}, {{U(1), U(0)}}), FixtureTooSmall);
}

TEST_CASE("unit as mediator and mediator uniqueness") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_space(rng, 1 + rng() % 4);
    const Base b = Base::simplex(1 + rng() % 4);
    CHECK(check_unit_as_mediator(random_slice(rng, x, b), standard_homs(rng, b.dim, 3)).passed);
    const auto p = random_measure(rng, x), q = random_measure(rng, x);
    CHECK(check_mediator_uniqueness(gamma(p), gamma(q)).passed);
  }
}

TEST_CASE("I x I corners") {
  // pi1 +_a pi2 evaluated at the bilinear point (u, v) is u +_a v
  for (const auto& a : rational_grid(3))
    for (const auto& u : rational_grid(3))
      for (const auto& v : rational_grid(3))
        CHECK(apply_hom(projection_combination_hom(a), square_point(u, v)) == cvx_combine(u, v, a));
  CHECK(apply_hom(projection_hom(1), square_point(U(1, 3), U(3, 4))) == U(1, 3));
  CHECK(apply_hom(projection_hom(2), square_point(U(1, 3), U(3, 4))) == U(3, 4));
}
