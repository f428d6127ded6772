#include "giry/codensity.hpp"

#include <algorithm>
#include <stdexcept>

namespace giry {

namespace {

std::string describe_hom(const HomParam& h) {
  std::string out = "h=(";
  for (std::size_t i = 0; i < h.size(); ++i) out += (i ? "," : "") + to_string(h[i]);
  return out + ")";
}

std::string describe_map(const AffineMap<Simplex>& k) {
  std::string out = "k=[";
  for (std::size_t i = 0; i < k.images.size(); ++i) out += (i ? "; " : "") + to_string(k.images[i]);
  return out + "]";
}

std::string describe_slice(const SliceObject& f) {
  std::string out = "f:" + f.target.name + "{";
  for (std::size_t a = 0; a < f.atom_images.size(); ++a) out += (a ? ", " : "") + f.atom_images[a].name();
  return out + "}";
}

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

}  // namespace

UnitRational apply_hom(const HomParam& h, const SimplexPoint& b) {
  if (h.size() != b.dim()) throw std::invalid_argument("hom and point have different dimensions");
  Rational sum = 0;
  for (std::size_t i = 0; i < h.size(); ++i) sum += b[i].value() * h[i].value();
  return UnitRational(sum);
}

HomParam precompose_hom(const HomParam& h, const AffineMap<Simplex>& k) {
  if (h.size() != k.cod.n) throw std::invalid_argument("hom does not live on the codomain of k");
  HomParam out;
  out.reserve(k.dom_dim());
  for (const auto& image : k.images) out.push_back(apply_hom(h, image));
  return out;
}

HomParam hom_of_endo(const AffineEndoI& h) { return {h.h0, h.h1}; }
HomParam identity_on_interval() { return hom_of_endo(AffineEndoI::identity()); }

HomParam projection_combination_hom(const UnitRational& alpha) {
  return {UnitRational::zero(), alpha, alpha.complement(), UnitRational::one()};
}

HomParam projection_hom(int which) {
  if (which != 1 && which != 2) throw std::invalid_argument("projection index must be 1 or 2");
  return projection_combination_hom(which == 1 ? UnitRational::one() : UnitRational::zero());
}

SimplexPoint interval_point(const UnitRational& t) { return SimplexPoint({t.complement(), t}); }

SimplexPoint square_point(const UnitRational& u, const UnitRational& v) {
  return SimplexPoint({u.complement() * v.complement(), u * v.complement(), u.complement() * v, u * v});
}

AffineMap<Simplex> corner_map_to_interval(const HomParam& corner_values) {
  if (corner_values.size() != 4) throw std::invalid_argument("a map out of I x I needs four corner values");
  AffineMap<Simplex> k{Simplex{2}, {}};
  for (const auto& c : corner_values) k.images.push_back(interval_point(c));
  return k;
}

IotaElement::IotaElement(std::size_t dim, std::string name, Body body, std::optional<SimplexPoint> point,
                         bool certified)
    : dim_(dim), name_(std::move(name)), body_(std::move(body)), point_(std::move(point)), certified_(certified) {}

IotaElement IotaElement::canonical(SimplexPoint b) {
  const std::size_t dim = b.dim();
  std::string name = "ev(" + to_string(b) + ")";
  return {dim, std::move(name), [b](const HomParam& h) { return apply_hom(h, b); }, std::move(b), true};
}

IotaElement IotaElement::derived(std::size_t dim, std::string name, Body body) {
  return {dim, std::move(name), std::move(body), std::nullopt, true};
}

IotaElement IotaElement::black_box(std::size_t dim, std::string name, Body body) {
  return {dim, std::move(name), std::move(body), std::nullopt, false};
}

UnitRational IotaElement::operator()(const HomParam& h) const {
  if (h.size() != dim_) throw std::invalid_argument("hom of dimension " + std::to_string(h.size()) +
                                                    " applied to an element over dimension " + std::to_string(dim_));
  return body_(h);
}

Verdict iota_equal(const IotaElement& a, const IotaElement& b, const std::vector<HomParam>& homs) {
  if (a.dim() != b.dim()) return Verdict::fail("different bases");
  for (const auto& h : homs) {
    const UnitRational va = a(h);
    const UnitRational vb = b(h);
    if (va != vb) return Verdict::fail(describe_hom(h) + " " + to_string(va) + " vs " + to_string(vb));
  }
  return Verdict::pass();
}

IotaElement iota_arrow(const AffineMap<Simplex>& k, const IotaElement& elem) {
  if (elem.dim() != k.dom_dim()) throw std::invalid_argument("iota_arrow: base mismatch");
  IotaElement::Body body = [k, elem](const HomParam& h) { return elem(precompose_hom(h, k)); };
  std::string name = "iota(k)(" + elem.name() + ")";
  return elem.certified() ? IotaElement::derived(k.cod.n, std::move(name), std::move(body))
                          : IotaElement::black_box(k.cod.n, std::move(name), std::move(body));
}

SliceObject slice_from_points(const SpaceRef& source, Base target, const std::vector<IotaElement>& point_images,
                              const std::vector<HomParam>& homs) {
  if (point_images.size() != source->n_points()) throw std::invalid_argument("one image per point required");
  SliceObject f{source, target, {}};
  for (const auto& atom : source->atoms()) {
    const IotaElement& first = point_images.at(atom.front());
    for (Point p : atom) {
      if (point_images[p].dim() != target.dim) throw std::invalid_argument("image over the wrong base");
      if (!iota_equal(first, point_images[p], homs)) {
        throw std::invalid_argument("slice map is not constant on the atom of point " + std::to_string(p));
      }
    }
    f.atom_images.push_back(first);
  }
  return f;
}

SliceObject compose_slice(const AffineMap<Simplex>& k, Base target, const SliceObject& f) {
  if (f.target.dim != k.dom_dim() || target.dim != k.cod.n) throw std::invalid_argument("compose_slice: base mismatch");
  SliceObject g{f.source, std::move(target), {}};
  for (const auto& e : f.atom_images) g.atom_images.push_back(iota_arrow(k, e));
  return g;
}

IFunction hat(const SliceObject& f, const HomParam& h) {
  std::vector<UnitRational> values;
  values.reserve(f.atom_images.size());
  for (const auto& e : f.atom_images) values.push_back(e(h));
  return {f.source, std::move(values)};
}

SliceObject prime(const IFunction& gamma) {
  SliceObject f{gamma.space(), Base::interval(), {}};
  for (const auto& v : gamma.atom_values()) f.atom_images.push_back(IotaElement::canonical(interval_point(v)));
  return f;
}

SliceObject pair_prime(const IFunction& gamma1, const IFunction& gamma2) {
  require_same_space(gamma1.space(), gamma2.space(), "pair_prime");
  SliceObject f{gamma1.space(), Base{4, "IxI"}, {}};
  for (std::size_t a = 0; a < gamma1.atom_values().size(); ++a) {
    f.atom_images.push_back(IotaElement::canonical(square_point(gamma1.at_atom(a), gamma2.at_atom(a))));
  }
  return f;
}

IotaElement lambda_leg(const SliceObject& f, const Functional& g) {
  require_same_space(f.source, g.space(), "lambda_leg");
  IotaElement::Body body = [f, g](const HomParam& h) { return g(hat(f, h)); };
  std::string name = "lambda(" + g.name() + ")";
  return g.certified() ? IotaElement::derived(f.target.dim, std::move(name), std::move(body))
                       : IotaElement::black_box(f.target.dim, std::move(name), std::move(body));
}

Verdict check_cone_condition(const ConeAtPoint& omega, const SliceObject& f, const AffineMap<Simplex>& k,
                             Base target, const std::vector<HomParam>& homs_on_target) {
  const SliceObject g = compose_slice(k, target, f);
  const IotaElement at_f = omega(f);
  const IotaElement at_g = omega(g);
  for (const auto& h : homs_on_target) {
    const UnitRational lhs = at_g(h);
    const UnitRational rhs = at_f(precompose_hom(h, k));
    if (lhs != rhs) {
      return Verdict::fail(describe_map(k) + " " + describe_slice(f) + " g=iota(k)f " + describe_hom(h) +
                           " omega_g[h]=" + to_string(lhs) + " omega_f[h o k]=" + to_string(rhs));
    }
  }
  return Verdict::pass();
}

Functional theta_mediator(const ConeAtPoint& omega, const SpaceRef& space) {
  const HomParam id = identity_on_interval();
  return Functional::black_box(space, "theta", [omega, id](const IFunction& gamma) { return omega(prime(gamma))(id); });
}

ThetaReport check_theta(const ConeAtPoint& omega, const SpaceRef& space, const std::vector<IFunction>& gammas,
                        const std::vector<UnitRational>& alphas, const std::vector<HomParam>& interval_homs) {
  ThetaReport report;
  const Functional theta = theta_mediator(omega, space);
  const HomParam id = identity_on_interval();

  auto record = [](Verdict& slot, Verdict v) {
    if (slot && !v) slot = std::move(v);
  };

  for (const auto& gamma : gammas) {
    const SliceObject gp = prime(gamma);
    for (const auto& u : alphas) {
      const AffineMap<Simplex> constant{Simplex{2}, {interval_point(u), interval_point(u)}};
      record(report.cone_conditions, check_cone_condition(omega, gp, constant, Base::interval(), interval_homs));
    }
  }
  report.weakly_averaging = check_weakly_averaging(theta, alphas);

  std::vector<AffineSample<IFunction>> samples;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    for (std::size_t j = i; j < gammas.size(); ++j) {
      for (const auto& a : alphas) samples.push_back({gammas[i], gammas[j], a});
    }
  }
  report.affine = check_affine(theta, samples);

  for (const auto& s : samples) {
    const SliceObject pair = pair_prime(s.f, s.g);
    for (int which : {1, 2}) {
      record(report.cone_conditions,
             check_cone_condition(omega, pair, corner_map_to_interval(projection_hom(which)), Base::interval(),
                                  interval_homs));
    }
    const IotaElement at_pair = omega(pair);
    const UnitRational via_pair = at_pair(projection_combination_hom(s.r));
    const UnitRational via_parts = cvx_combine(omega(prime(s.f))(id), omega(prime(s.g))(id), s.r);
    const UnitRational via_mix = omega(prime(pointwise_combine(s.f, s.g, s.r)))(id);
    if (via_pair != via_parts || via_mix != via_pair) {
      record(report.affine_via_pairs,
             Verdict::fail("g1=" + describe(s.f) + " g2=" + describe(s.g) + " alpha=" + to_string(s.r) +
                           " omega_pair[pi1+pi2]=" + to_string(via_pair) + " parts=" + to_string(via_parts) +
                           " omega_mix[id]=" + to_string(via_mix)));
    }
  }

  for (const auto& gamma : gammas) {
    record(report.preserves_limits, check_preserves_limits(theta, gamma, standard_limit_chains(gamma)));
  }
  return report;
}

ConeAtPoint multiplication_cone(const FunctionalOnFunctionals& q) {
  return [q](const SliceObject& f) {
    return IotaElement::derived(f.target.dim, "mu-cone", [q, f](const HomParam& h) {
      const IFunction fh = hat(f, h);
      return q([&](const Functional& g) { return g(fh); });
    });
  };
}

ConeAtPoint lambda_cone(const Functional& g) {
  return [g](const SliceObject& f) { return lambda_leg(f, g); };
}

Verdict check_mediator_uniqueness(const Functional& a, const Functional& b) {
  const HomParam id = identity_on_interval();
  bool agree = true;
  std::string first_difference;
  for (const auto& s : all_measurable_sets(a.space())) {
    const SliceObject f = prime(indicator(s));
    const UnitRational va = lambda_leg(f, a)(id);
    const UnitRational vb = lambda_leg(f, b)(id);
    if (va != vb) {
      agree = false;
      first_difference = "chi_S with S=" + describe(indicator(s)) + ": " + to_string(va) + " vs " + to_string(vb);
      break;
    }
  }
  const Verdict equal = extensionally_equal(a, b);
  if (agree == equal.passed) return Verdict::pass();
  return Verdict::fail(agree ? "cone legs agree but functionals differ: " + equal.witness
                             : "functionals agree but cone legs differ at " + first_difference);
}

Verdict check_unit_as_mediator(const SliceObject& g, const std::vector<HomParam>& homs) {
  for (Point x = 0; x < g.source->n_points(); ++x) {
    const Verdict v = iota_equal(lambda_leg(g, unit(g.source, x)), g(x), homs);
    if (!v) return Verdict::fail("x=" + std::to_string(x) + " " + v.witness);
  }
  return Verdict::pass();
}

IotaFixture make_iota_fixture(Base base, std::vector<IotaElement> elements, std::vector<HomParam> probes) {
  if (elements.empty()) throw std::invalid_argument("empty iota fixture");
  std::vector<Block> generators;
  for (const auto& h : probes) {
    std::vector<std::pair<UnitRational, Block>> level_sets;
    for (Point i = 0; i < elements.size(); ++i) {
      if (elements[i].dim() != base.dim) throw std::invalid_argument("fixture element over the wrong base");
      const UnitRational v = elements[i](h);
      auto it = std::find_if(level_sets.begin(), level_sets.end(), [&](const auto& e) { return e.first == v; });
      if (it == level_sets.end()) {
        level_sets.push_back({v, {i}});
      } else {
        it->second.push_back(i);
      }
    }
    for (auto& [v, block] : level_sets) generators.push_back(std::move(block));
  }
  SpaceRef space = generate_sigma_algebra(elements.size(), generators);
  if (!space->is_discrete()) {
    for (const auto& atom : space->atoms()) {
      if (atom.size() > 1) {
        throw FixtureTooSmall("fixture too small to separate points: elements " + std::to_string(atom[0]) + " and " +
                              std::to_string(atom[1]) + " agree on every probe");
      }
    }
  }
  return {std::move(base), std::move(elements), std::move(probes), std::move(space)};
}

IFunction evaluation_function(const IotaFixture& fixture, const HomParam& h) {
  std::vector<UnitRational> values;
  values.reserve(fixture.elements.size());
  for (const auto& e : fixture.elements) values.push_back(e(h));
  return IFunction::from_points(fixture.space, values);
}

IotaElement epsilon(const IotaFixture& fixture, const Functional& g) {
  require_same_space(fixture.space, g.space(), "epsilon");
  IotaElement::Body body = [fixture, g](const HomParam& h) { return g(evaluation_function(fixture, h)); };
  return g.certified() ? IotaElement::derived(fixture.base.dim, "epsilon", std::move(body))
                       : IotaElement::black_box(fixture.base.dim, "epsilon", std::move(body));
}

FixtureImage image_fixture(const IotaFixture& fixture, const AffineMap<Simplex>& k, Base target,
                           std::vector<HomParam> target_probes) {
  std::vector<IotaElement> images;
  std::vector<Point> table;
  for (const auto& e : fixture.elements) {
    IotaElement img = iota_arrow(k, e);
    auto it = std::find_if(images.begin(), images.end(),
                           [&](const IotaElement& other) { return iota_equal(other, img, target_probes).passed; });
    if (it == images.end()) {
      table.push_back(images.size());
      images.push_back(std::move(img));
    } else {
      table.push_back(static_cast<Point>(it - images.begin()));
    }
  }
  IotaFixture image = make_iota_fixture(std::move(target), std::move(images), std::move(target_probes));
  MeasurableFn map(fixture.space, image.space, std::move(table));
  return {std::move(image), std::move(map)};
}

Verdict check_epsilon_naturality(const IotaFixture& fixture, const AffineMap<Simplex>& k, Base target,
                                 const std::vector<HomParam>& target_probes, const Functional& g) {
  const FixtureImage img = image_fixture(fixture, k, std::move(target), target_probes);
  const IotaElement lhs = epsilon(img.image, t_pushforward(img.map, g));
  const IotaElement rhs = iota_arrow(k, epsilon(fixture, g));
  const Verdict v = iota_equal(lhs, rhs, target_probes);
  if (v) return v;
  return Verdict::fail(describe_map(k) + " G=" + g.name() + " " + v.witness);
}

HomParam random_hom(Rng& rng, std::size_t dim) {
  HomParam h;
  for (std::size_t i = 0; i < dim; ++i) h.push_back(random_unit(rng, 8));
  return h;
}

std::vector<HomParam> standard_homs(Rng& rng, std::size_t dim, std::size_t extra) {
  std::vector<HomParam> out;
  for (std::size_t i = 0; i < dim; ++i) {
    HomParam h(dim);
    h[i] = UnitRational::one();
    out.push_back(std::move(h));
  }
  for (const auto& c : {UnitRational::zero(), UnitRational(1, 2), UnitRational::one()}) out.emplace_back(dim, c);
  for (std::size_t i = 0; i < extra; ++i) out.push_back(random_hom(rng, dim));
  return out;
}

SimplexPoint random_simplex_point(Rng& rng, std::size_t dim, std::int64_t max_weight) {
  std::vector<std::int64_t> w(dim);
  std::int64_t total = 0;
  for (auto& x : w) total += (x = uniform_int(rng, 0, max_weight));
  if (total == 0) {
    w[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(dim) - 1))] = 1;
    total = 1;
  }
  std::vector<UnitRational> coords;
  for (auto x : w) coords.emplace_back(x, total);
  return SimplexPoint(std::move(coords));
}

AffineMap<Simplex> random_affine_map(Rng& rng, std::size_t from_dim, std::size_t to_dim) {
  AffineMap<Simplex> k{Simplex{to_dim}, {}};
  for (std::size_t i = 0; i < from_dim; ++i) k.images.push_back(random_simplex_point(rng, to_dim));
  return k;
}

SliceObject random_slice(Rng& rng, const SpaceRef& source, Base target) {
  SliceObject f{source, target, {}};
  for (std::size_t a = 0; a < source->n_atoms(); ++a) {
    f.atom_images.push_back(IotaElement::canonical(random_simplex_point(rng, target.dim)));
  }
  return f;
}

}  // namespace giry
