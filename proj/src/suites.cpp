#include "giry/suites.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

#include "giry/codensity.hpp"
#include "giry/convex.hpp"
#include "giry/equivalence.hpp"
#include "giry/functional.hpp"
#include "giry/giry.hpp"
#include "giry/sampling.hpp"

namespace giry {

namespace {

// FNV-1a, so per-check seeds do not depend on the standard library's hash.
std::uint64_t seed_for(const VerifyOptions& opts, const std::string& id, std::size_t salt = 0) {
  std::uint64_t h = 1469598103934665603ull ^ opts.seed;
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h ^ (salt * 0x9e3779b97f4a7c15ull);
}

struct FiniteCase {
  std::string tag;
  SpaceRef space;
  std::vector<Measure> measures;
  std::vector<IFunction> functions;
  const Fixture* fixture = nullptr;
};

struct Context {
  VerifyOptions opts;
  std::vector<Fixture> fixtures;
  std::vector<FiniteCase> finite;
  std::vector<const Fixture*> countable;

  explicit Context(std::vector<Fixture> fx, const VerifyOptions& o) : opts(o), fixtures(std::move(fx)) {
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
      const Fixture& f = fixtures[i];
      if (f.countable) {
        countable.push_back(&f);
      } else if (f.space) {
        finite.push_back({f.source + "#" + std::to_string(i), f.space, f.measures, f.functions, &f});
      }
    }
  }
};

using Body = std::function<CheckOutcome(const Context&, Rng&)>;

struct Named {
  std::string id;
  Body body;
};

// Fixture measures plus random ones, or the exhaustive grid on small spaces.
std::vector<Measure> measures_for(const Context& ctx, const FiniteCase& fc, Rng& rng) {
  std::vector<Measure> out = fc.measures;
  if (ctx.opts.exhaustive_denominator > 0 && fc.space->n_atoms() <= 3) {
    for (auto& p : grid_measures(fc.space, ctx.opts.exhaustive_denominator)) out.push_back(std::move(p));
  } else {
    for (std::size_t i = 0; i < ctx.opts.samples; ++i) out.push_back(random_measure(rng, fc.space));
  }
  return out;
}

std::vector<IFunction> functions_for(const Context& ctx, const FiniteCase& fc, Rng& rng) {
  std::vector<IFunction> out = fc.functions;
  for (std::size_t i = 0; i < ctx.opts.samples; ++i) out.push_back(random_function(rng, fc.space));
  return out;
}

// A codomain small enough that the tensor product stays under the cap.
std::optional<SpaceRef> partner_space(const Context& ctx, const FiniteCase& fc, Rng& rng) {
  const std::size_t room = ctx.opts.cap_tensor / fc.space->n_points();
  if (room == 0) return std::nullopt;
  const std::size_t m = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(room, 3))(rng);
  return random_space(rng, m);
}

FunctionalOnFunctionals random_q(Rng& rng, const SpaceRef& space, std::size_t terms) {
  std::vector<FiniteMixture<Functional>::Term> ts;
  std::vector<std::int64_t> w;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < terms; ++i) {
    w.push_back(std::uniform_int_distribution<std::int64_t>(1, 5)(rng));
    total += w.back();
  }
  for (std::size_t i = 0; i < terms; ++i) ts.push_back({UnitRational(w[i], total), gamma(random_measure(rng, space))});
  return FunctionalOnFunctionals::from_mixture(FiniteMixture<Functional>(std::move(ts)));
}

template <class T, class Make>
FiniteMixture<T> random_mixture(Rng& rng, std::size_t terms, Make&& make) {
  std::vector<std::int64_t> w;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < terms; ++i) {
    w.push_back(std::uniform_int_distribution<std::int64_t>(1, 5)(rng));
    total += w.back();
  }
  std::vector<typename FiniteMixture<T>::Term> ts;
  for (std::size_t i = 0; i < terms; ++i) ts.push_back({UnitRational(w[i], total), make()});
  return FiniteMixture<T>(std::move(ts));
}

void take(CheckOutcome& o, const Verdict& v, const std::string& where) {
  if (!v) o.fail(where + ": " + v.witness);
}

std::size_t small(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// ---------------------------------------------------------------- laws

std::vector<Named> laws_checks() {
  std::vector<Named> c;

  c.push_back({"convex-axioms", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 auto record = [&](const std::string& where, const AxiomReport& r, std::size_t n) {
                   o.cases += n;
                   for (int i = 0; i < 4; ++i) take(o, r.axioms[i], where + " axiom " + std::to_string(i + 1));
                 };
                 const auto weights = rational_grid(4);
                 std::vector<std::array<UnitRational, 3>> it;
                 for (const auto& a : rational_grid(3))
                   for (const auto& b : rational_grid(3))
                     for (const auto& d : rational_grid(3)) it.push_back({a, b, d});
                 record("I", check_axioms(UnitInterval{}, it, weights), it.size());
                 for (std::size_t n = 1; n <= 4; ++n) {
                   std::vector<std::array<SimplexPoint, 3>> s;
                   for (std::size_t i = 0; i < ctx.opts.samples; ++i)
                     s.push_back({random_simplex_point(rng, n), random_simplex_point(rng, n), random_simplex_point(rng, n)});
                   record("simplex" + std::to_string(n), check_axioms(Simplex{n}, s, weights), s.size());
                 }
                 for (const auto& fc : ctx.finite) {
                   std::vector<std::array<IFunction, 3>> s;
                   for (std::size_t i = 0; i < ctx.opts.samples; ++i)
                     s.push_back({random_function(rng, fc.space), random_function(rng, fc.space), random_function(rng, fc.space)});
                   record(fc.tag + " I^X", check_axioms(PointwiseFunctions{fc.space}, s, weights), s.size());
                 }
                 return o;
               }});

  c.push_back({"free-barycentric-roundtrip", [](const Context&, Rng&) {
                 CheckOutcome o;
                 for (std::size_t n = 1; n <= 4; ++n) {
                   Simplex simplex{n};
                   std::vector<SimplexPoint> vertices;
                   for (std::size_t i = 0; i < n; ++i) vertices.push_back(SimplexPoint::vertex(n, i));
                   for (const auto& m : grid_measures(discrete_space(n), 4)) {
                     ++o.cases;
                     const SimplexPoint p(m.atom_masses());
                     const FreeForm form = barycentric_to_free(p);
                     if (!(free_to_barycentric(form, n) == p) || !(form.evaluate(simplex, vertices) == p)) {
                       o.fail("p=" + to_string(p) + " form=" + to_string(form));
                     }
                   }
                 }
                 return o;
               }});

  c.push_back({"telescoping-decomposition", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   for (const auto& f : functions_for(ctx, fc, rng)) {
                     ++o.cases;
                     const auto d = telescoping_decompose(f);
                     if (d.coefficient_sum() != 1) o.fail(fc.tag + " f=" + describe(f) + " coefficients sum to " + to_string(d.coefficient_sum()));
                     if (!(d.recompose(fc.space) == f)) o.fail(fc.tag + " f=" + describe(f) + " does not recompose");
                     if (!(normalize(d).recompose(fc.space) == f)) o.fail(fc.tag + " f=" + describe(f) + " normalized form differs");
                   }
                 }
                 return o;
               }});

  c.push_back({"sigma-algebra-idempotent", [](const Context& ctx, Rng&) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   ++o.cases;
                   const SpaceRef again = generate_sigma_algebra(fc.space->n_points(), fc.space->atoms());
                   if (!(*again == *fc.space)) o.fail(fc.tag + ": regenerating from the atoms changes the sigma-algebra");
                 }
                 return o;
               }});

  c.push_back({"tensor-contains-product", [](const Context& ctx, Rng&) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   const std::size_t n = fc.space->n_points();
                   for (std::size_t m = 1; n * m <= ctx.opts.cap_tensor && m <= 3; ++m) {
                     for (const auto& y : all_sigma_algebras(m)) {
                       const TensorProduct xy = tensor_sigma_algebra(fc.space, y, ctx.opts.cap_tensor);
                       for (const auto& a : all_measurable_sets(fc.space))
                         for (const auto& b : all_measurable_sets(y)) {
                           ++o.cases;
                           try {
                             xy.rectangle(a, b);
                           } catch (const std::invalid_argument& e) {
                             o.fail(fc.tag + " |Y|=" + std::to_string(m) + " A=" + describe(indicator(a)) +
                                    " B=" + describe(indicator(b)) + ": " + e.what());
                           }
                         }
                       if (fc.space->is_discrete() && y->is_discrete() && !xy.space->is_discrete())
                         o.fail(fc.tag + " |Y|=" + std::to_string(m) + ": tensor of discrete spaces is not discrete");
                     }
                   }
                 }
                 return o;
               }});

  c.push_back({"giry-unit-laws", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   for (const auto& p : measures_for(ctx, fc, rng)) {
                     ++o.cases;
                     if (!(join(MeasureOnMeasures::point_mass(p)) == p)) o.fail(fc.tag + " mu(eta P) != P for " + to_string(p));
                     if (!(join(lift_dirac(p)) == p)) o.fail(fc.tag + " mu(G(eta) P) != P for " + to_string(p));
                   }
                 }
                 return o;
               }});

  c.push_back({"giry-associativity", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   for (std::size_t i = 0; i < ctx.opts.samples; ++i) {
                     ++o.cases;
                     const auto r = random_mixture<MeasureOnMeasures>(rng, small(rng, 1, 3), [&] {
                       return random_mixture<Measure>(rng, small(rng, 1, 3), [&] { return random_measure(rng, fc.space); });
                     });
                     const Measure lhs = join(r.map([](const MeasureOnMeasures& q) { return join(q); }));
                     const Measure rhs = join(flatten(r));
                     if (!(lhs == rhs)) o.fail(fc.tag + " mu(G mu R)=" + to_string(lhs) + " mu(mu R)=" + to_string(rhs));
                   }
                 }
                 return o;
               }});

  c.push_back({"T-unit-laws", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   const auto extra = functions_for(ctx, fc, rng);
                   for (const auto& p : measures_for(ctx, fc, rng)) {
                     ++o.cases;
                     const Functional g = gamma(p);
                     take(o, extensionally_equal(t_join(unit_over(g)), g, extra), fc.tag + " mu(eta G)");
                     take(o, extensionally_equal(t_join(t_lift_unit(g)), g, extra), fc.tag + " mu(T(eta) G)");
                   }
                 }
                 return o;
               }});

  c.push_back({"T-associativity", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   const auto extra = functions_for(ctx, fc, rng);
                   const SpaceRef space = fc.space;
                   for (std::size_t i = 0; i < ctx.opts.samples; ++i) {
                     ++o.cases;
                     const auto outer = random_mixture<FunctionalOnFunctionals>(
                         rng, small(rng, 1, 3), [&] { return random_q(rng, space, small(rng, 1, 3)); });
                     const auto r = FunctionalOver<FunctionalOnFunctionals>::from_mixture(outer);
                     const Functional lhs = t_join(map_over([space](const FunctionalOnFunctionals& q) { return t_join(q, space); }, r), space);
                     const Functional rhs = t_join(join_over(r), space);
                     take(o, extensionally_equal(lhs, rhs, extra), fc.tag);
                   }
                 }
                 return o;
               }});

  c.push_back({"T-closure", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 auto gate = [&](const Functional& g, const std::string& where) {
                   ++o.cases;
                   const PropertyGate pg = run_property_gate(g);
                   take(o, pg.weakly_averaging, where + " weakly-averaging");
                   take(o, pg.affine, where + " affine");
                   take(o, pg.preserves_limits, where + " preserves-limits");
                 };
                 for (const auto& fc : ctx.finite) {
                   for (Point x = 0; x < fc.space->n_points(); ++x) gate(unit(fc.space, x), fc.tag + " unit");
                   for (std::size_t i = 0; i < ctx.opts.samples; ++i) {
                     const SpaceRef y = random_space(rng, small(rng, 1, 4));
                     gate(t_pushforward(random_measurable_map(rng, fc.space, y), gamma(random_measure(rng, fc.space))),
                          fc.tag + " pushforward");
                     gate(t_join(random_q(rng, fc.space, small(rng, 1, 3))), fc.tag + " join");
                   }
                 }
                 return o;
               }});

  c.push_back({"unit-naturality", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   for (std::size_t i = 0; i < ctx.opts.samples; ++i) {
                     const SpaceRef y = random_space(rng, small(rng, 1, 4));
                     const MeasurableFn f = random_measurable_map(rng, fc.space, y);
                     for (Point x = 0; x < fc.space->n_points(); ++x) {
                       ++o.cases;
                       if (!(pushforward(dirac(fc.space, x), f) == dirac(y, f(x))))
                         o.fail(fc.tag + " x=" + std::to_string(x) + ": G(f)(eta x) != eta(f x)");
                       take(o, extensionally_equal(t_pushforward(f, unit(fc.space, x)), unit(y, f(x))),
                            fc.tag + " x=" + std::to_string(x) + " T(f)(eta x)");
                     }
                   }
                 }
                 return o;
               }});

  c.push_back({"strength-marginals", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   for (std::size_t i = 0; i < ctx.opts.samples; ++i) {
                     const auto y = partner_space(ctx, fc, rng);
                     if (!y) break;
                     const TensorProduct xy = tensor_sigma_algebra(fc.space, *y, ctx.opts.cap_tensor);
                     const Measure p = random_measure(rng, fc.space);
                     const Point yp = small(rng, 0, (*y)->n_points() - 1);
                     const Measure tau = strength(p, xy, yp);
                     ++o.cases;
                     if (!(pushforward(tau, xy.project_x()) == p)) o.fail(fc.tag + " X-marginal of tau differs from P=" + to_string(p));
                     if (!(pushforward(tau, xy.project_y()) == dirac(*y, yp))) o.fail(fc.tag + " Y-marginal of tau is not a point mass at y=" + std::to_string(yp));
                   }
                 }
                 return o;
               }});

  c.push_back({"strength-naturality", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   for (std::size_t i = 0; i < ctx.opts.samples; ++i) {
                     const auto y = partner_space(ctx, fc, rng);
                     if (!y) break;
                     const SpaceRef y2 = random_space(rng, (*y)->n_points());
                     const SpaceRef x2 = random_space(rng, fc.space->n_points());
                     const TensorProduct xy = tensor_sigma_algebra(fc.space, *y, ctx.opts.cap_tensor);
                     const TensorProduct xy2 = tensor_sigma_algebra(fc.space, y2, ctx.opts.cap_tensor);
                     const TensorProduct x2y = tensor_sigma_algebra(x2, *y, ctx.opts.cap_tensor);
                     const MeasurableFn g = random_measurable_map(rng, *y, y2);
                     const MeasurableFn f = random_measurable_map(rng, fc.space, x2);
                     const Measure p = random_measure(rng, fc.space);
                     const Point yp = small(rng, 0, (*y)->n_points() - 1);
                     const Measure tau = strength(p, xy, yp);
                     ++o.cases;
                     const Measure along_y = pushforward(tau, tensor_map(xy, xy2, MeasurableFn::identity(fc.space), g));
                     if (!(along_y == strength(p, xy2, g(yp)))) o.fail(fc.tag + " (id x g) tau != tau(P, g y) at y=" + std::to_string(yp));
                     const Measure along_x = pushforward(tau, tensor_map(xy, x2y, f, MeasurableFn::identity(*y)));
                     if (!(along_x == strength(pushforward(p, f), x2y, yp))) o.fail(fc.tag + " (f x id) tau != tau(fP, y) at y=" + std::to_string(yp));
                   }
                 }
                 return o;
               }});

  c.push_back({"st-map-three-stage", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   for (std::size_t i = 0; i < ctx.opts.samples; ++i) {
                     const auto y = partner_space(ctx, fc, rng);
                     if (!y) break;
                     const MeasurableFn f = random_measurable_map(rng, fc.space, *y);
                     const Measure p = random_measure(rng, fc.space);
                     ++o.cases;
                     const Measure staged = st_map_three_stage(f, p, std::max(ctx.opts.cap_tensor, 2 * fc.space->n_points()));
                     if (!(staged == pushforward(p, f))) o.fail(fc.tag + " three-stage " + to_string(staged) + " vs direct " + to_string(pushforward(p, f)));
                   }
                 }
                 return o;
               }});

  c.push_back({"integral-via-two", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   const auto sets = all_measurable_sets(fc.space);
                   for (const auto& p : measures_for(ctx, fc, rng)) {
                     for (const auto& s : sets) {
                       ++o.cases;
                       const IFunction chi = indicator(s);
                       if (integral_via_two(chi, p) != p(s) || integrate(p, chi) != p(s))
                         o.fail(fc.tag + " P=" + to_string(p) + " S=" + describe(chi));
                     }
                   }
                 }
                 return o;
               }});

  c.push_back({"section-property", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   for (const auto& f : functions_for(ctx, fc, rng)) {
                     for (Point x = 0; x < fc.space->n_points(); ++x) {
                       ++o.cases;
                       if (integrate(dirac(fc.space, x), f) != f(x)) o.fail(fc.tag + " x=" + std::to_string(x) + " f=" + describe(f));
                     }
                   }
                 }
                 return o;
               }});
  return c;
}

// ---------------------------------------------------------- lemma-basic

std::vector<Functional> finite_subjects(const FiniteCase& fc) {
  std::vector<Functional> out;
  if (fc.fixture) {
    if (auto g = finite_functional(*fc.fixture)) out.push_back(*g);
  }
  if (out.empty()) {
    for (const auto& p : fc.measures) out.push_back(gamma(p));
  }
  return out;
}

std::vector<std::pair<CountableSet, CountableSet>> countable_pairs(Rng& rng, std::size_t n) {
  std::vector<std::pair<CountableSet, CountableSet>> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({random_countable_set(rng), random_countable_set(rng)});
  return out;
}

constexpr std::size_t kHorizon = 16;

const std::vector<UnitRational>& lemma_alphas() {
  static const std::vector<UnitRational> a = {UnitRational::zero(), UnitRational(1, 4), UnitRational(1, 2),
                                              UnitRational(2, 3), UnitRational::one()};
  return a;
}

LemmaBasicReport finite_lemma(const Context& ctx, const FiniteCase& fc, const Functional& g, Rng& rng) {
  std::vector<std::pair<MeasurableSet, MeasurableSet>> pairs;
  for (std::size_t i = 0; i < 4 * ctx.opts.samples; ++i) pairs.push_back({random_set(rng, fc.space), random_set(rng, fc.space)});
  return lemma_basic_suite(g, finite_lemma_samples(fc.space, std::move(pairs), functions_for(ctx, fc, rng), lemma_alphas()));
}

LemmaBasicReport countable_lemma(const Context& ctx, const CountableFunctional& g, Rng& rng) {
  return lemma_basic_suite(g, countable_lemma_samples(countable_pairs(rng, 4 * ctx.opts.samples), lemma_alphas(), kHorizon));
}

PropertyGate countable_gate(const Context& ctx, const CountableFunctional& g, Rng& rng) {
  PropertyGate pg;
  pg.weakly_averaging = check_weakly_averaging(g, rational_grid(4));
  std::vector<AffineSample<CountableIFunction>> samples;
  for (std::size_t i = 0; i < ctx.opts.samples; ++i) {
    samples.push_back({indicator(random_countable_set(rng)), indicator(random_countable_set(rng)), random_unit(rng, 6)});
  }
  pg.affine = check_affine(g, samples);
  for (const auto& s : {CountableSet::all(), CountableSet::cofinite({0}), random_countable_set(rng)}) {
    const Verdict v = check_preserves_limits(g, s, kHorizon);
    if (pg.preserves_limits && !v) pg.preserves_limits = v;
  }
  return pg;
}

// Every functional the lemma suite examines, finite or countable.
template <class OnFinite, class OnCountable>
void for_each_subject(const Context& ctx, Rng& rng, OnFinite&& on_finite, OnCountable&& on_countable) {
  for (const auto& fc : ctx.finite)
    for (const auto& g : finite_subjects(fc)) on_finite(fc, g);
  for (const Fixture* f : ctx.countable) {
    if (auto g = countable_functional(*f)) {
      on_countable(f->source, *g);
    } else {
      for (const auto& p : f->countable_measures) on_countable(f->source, CountableFunctional::canonical(p));
    }
  }
  (void)rng;
}

std::vector<Named> lemma_checks() {
  std::vector<Named> c;
  for (int item = 0; item < 6; ++item) {
    c.push_back({kLemmaBasicIds[item], [item](const Context& ctx, Rng& rng) {
                   CheckOutcome o;
                   for_each_subject(
                       ctx, rng,
                       [&](const FiniteCase& fc, const Functional& g) {
                         ++o.cases;
                         take(o, finite_lemma(ctx, fc, g, rng).items[item], fc.tag + " G=" + g.name());
                       },
                       [&](const std::string& tag, const CountableFunctional& g) {
                         ++o.cases;
                         take(o, countable_lemma(ctx, g, rng).items[item], tag + " G=" + g.name());
                       });
                   if (item == 4) {
                     // finite additivity on N over singleton covers of random measures
                     for (std::size_t i = 0; i < ctx.opts.samples; ++i) {
                       ++o.cases;
                       const auto g = CountableFunctional::canonical(random_countable_measure(rng));
                       take(o, countable_lemma(ctx, g, rng).items[4], "random measure on N");
                     }
                   }
                   return o;
                 }});
  }

  const std::array<const char*, 3> props = {"property-weakly-averaging", "property-affine", "property-preserves-limits"};
  for (int k = 0; k < 3; ++k) {
    c.push_back({props[k], [k](const Context& ctx, Rng& rng) {
                   CheckOutcome o;
                   auto pick = [k](const PropertyGate& pg) -> const Verdict& {
                     return k == 0 ? pg.weakly_averaging : k == 1 ? pg.affine : pg.preserves_limits;
                   };
                   for_each_subject(
                       ctx, rng,
                       [&](const FiniteCase& fc, const Functional& g) {
                         ++o.cases;
                         take(o, pick(run_property_gate(g)), fc.tag + " G=" + g.name());
                       },
                       [&](const std::string& tag, const CountableFunctional& g) {
                         ++o.cases;
                         take(o, pick(countable_gate(ctx, g, rng)), tag + " G=" + g.name());
                       });
                   return o;
                 }});
  }

  // Black boxes with declarations must fail exactly what they declare.
  c.push_back({"declared-violations", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 auto compare = [&](const std::string& tag, const FunctionalSpec& spec, const PropertyGate& pg,
                                    const LemmaBasicReport& lemma) {
                   ++o.cases;
                   std::set<std::string> actual;
                   if (!pg.weakly_averaging) actual.insert("weakly-averaging");
                   if (!pg.affine) actual.insert("affine");
                   if (!pg.preserves_limits) actual.insert("preserves-limits");
                   const std::set<std::string> declared(spec.violates.begin(), spec.violates.end());
                   const auto items = lemma.failed_items();
                   const std::set<int> actual_items(items.begin(), items.end());
                   const std::set<int> declared_items(spec.lemma_items.begin(), spec.lemma_items.end());
                   auto join_s = [](const auto& s) {
                     std::string out;
                     for (const auto& v : s) {
                       if (!out.empty()) out += ",";
                       if constexpr (std::is_same_v<std::decay_t<decltype(v)>, std::string>) {
                         out += v;
                       } else {
                         out += std::to_string(v);
                       }
                     }
                     return "{" + out + "}";
                   };
                   if (actual != declared) o.fail(tag + " " + spec.name + " fails properties " + join_s(actual) + ", declared " + join_s(declared));
                   if (actual_items != declared_items) o.fail(tag + " " + spec.name + " fails items " + join_s(actual_items) + ", declared " + join_s(declared_items));
                 };
                 for (const auto& fc : ctx.finite) {
                   if (!fc.fixture->functional || fc.fixture->functional->kind != "black-box") continue;
                   const Functional g = *finite_functional(*fc.fixture);
                   compare(fc.tag, *fc.fixture->functional, run_property_gate(g), finite_lemma(ctx, fc, g, rng));
                 }
                 for (const Fixture* f : ctx.countable) {
                   if (!f->functional || f->functional->kind != "black-box") continue;
                   const CountableFunctional g = *countable_functional(*f);
                   compare(f->source, *f->functional, countable_gate(ctx, g, rng), countable_lemma(ctx, g, rng));
                 }
                 if (o.cases == 0) return CheckOutcome::skipped("no black-box fixtures");
                 return o;
               }});
  return c;
}

// ---------------------------------------------------------- equivalence

std::vector<Functional> canonical_family(const Context& ctx, const FiniteCase& fc, Rng& rng) {
  std::vector<Functional> out;
  const auto ms = measures_for(ctx, fc, rng);
  for (const auto& p : ms) out.push_back(gamma(p));
  for (std::size_t i = 0; i + 1 < ms.size() && i < ctx.opts.samples; ++i) {
    out.push_back(combine_functionals(gamma(ms[i]), gamma(ms[i + 1]), random_unit(rng, 6)));
    out.push_back(t_pushforward(MeasurableFn::identity(fc.space), gamma(ms[i])));
  }
  return out;
}

std::vector<Named> equivalence_checks() {
  std::vector<Named> c;

  c.push_back({"phi-gamma-roundtrip", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   for (const auto& p : measures_for(ctx, fc, rng)) {
                     ++o.cases;
                     const Measure back = phi(gamma(p));
                     if (!(back == p)) o.fail(fc.tag + " phi(gamma(P))=" + to_string(back) + " for " + to_string(p));
                   }
                 }
                 return o;
               }});

  c.push_back({"gamma-phi-roundtrip", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   const auto extra = functions_for(ctx, fc, rng);
                   for (const auto& g : canonical_family(ctx, fc, rng)) {
                     ++o.cases;
                     take(o, extensionally_equal(gamma(phi(g)), g, extra), fc.tag + " G=" + g.name());
                   }
                 }
                 return o;
               }});

  c.push_back({"phi-naturality", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   for (std::size_t i = 0; i < ctx.opts.samples; ++i) {
                     ++o.cases;
                     const SpaceRef y = random_space(rng, small(rng, 1, 4));
                     take(o, check_naturality(random_measurable_map(rng, fc.space, y), gamma(random_measure(rng, fc.space))), fc.tag);
                   }
                 }
                 return o;
               }});

  auto morphism = [](int which) {
    return [which](const Context& ctx, Rng& rng) {
      CheckOutcome o;
      for (const auto& fc : ctx.finite) {
        std::vector<Point> points(fc.space->n_points());
        for (Point x = 0; x < points.size(); ++x) points[x] = x;
        std::vector<FunctionalOnFunctionals> qs;
        for (std::size_t i = 0; i < ctx.opts.samples; ++i) qs.push_back(random_q(rng, fc.space, small(rng, 1, 4)));
        const auto r = check_monad_morphism(fc.space, which == 0 ? points : std::vector<Point>{}, which == 0 ? std::vector<FunctionalOnFunctionals>{} : qs);
        o.cases += which == 0 ? points.size() : qs.size();
        take(o, which == 0 ? r.left_square : which == 1 ? r.right_square : r.horizontal, fc.tag);
      }
      return o;
    };
  };
  c.push_back({"monadIso-left-square", morphism(0)});
  c.push_back({"monadIso-right-square", morphism(1)});
  c.push_back({"phi-phi-routes", morphism(2)});

  c.push_back({"giry-two-iso", [](const Context& ctx, Rng&) {
                 CheckOutcome o;
                 const auto table = giry_two_iso(rational_grid(std::max<std::size_t>(6, ctx.opts.exhaustive_denominator)));
                 o.cases = table.size();
                 take(o, check_giry_two_iso(table), "G(2)");
                 return o;
               }});

  c.push_back({"phi-affine", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   const auto ms = measures_for(ctx, fc, rng);
                   for (std::size_t i = 0; i < ms.size(); ++i) {
                     ++o.cases;
                     take(o, check_phi_affine(ms[i], ms[(i * 7 + 3) % ms.size()], random_unit(rng, 6)), fc.tag);
                   }
                 }
                 return o;
               }});

  c.push_back({"phi-generator-correspondence", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   const auto family = canonical_family(ctx, fc, rng);
                   for (const auto& s : all_measurable_sets(fc.space)) {
                     ++o.cases;
                     take(o, check_generator_correspondence(family, s, {UnitRational::zero(), UnitRational(1, 2), random_unit(rng, 6)}), fc.tag);
                   }
                 }
                 return o;
               }});

  c.push_back({"phi-accepts-fixture-functionals", [](const Context& ctx, Rng&) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   if (!fc.fixture || !fc.fixture->functional) continue;
                   ++o.cases;
                   try {
                     phi(*finite_functional(*fc.fixture));
                   } catch (const NotInT& e) {
                     o.fail(fc.tag + " " + e.what());
                   }
                 }
                 for (const Fixture* f : ctx.countable) {
                   if (!f->functional) continue;
                   ++o.cases;
                   try {
                     phi_countable(*countable_functional(*f), kHorizon);
                   } catch (const NotInT& e) {
                     o.fail(f->source + " " + e.what());
                   }
                 }
                 if (o.cases == 0) return CheckOutcome::skipped("no fixture functionals");
                 return o;
               }});
  return c;
}

// ------------------------------------------------------------ codensity

std::size_t random_dim(Rng& rng) { return small(rng, 2, 4); }

Base random_base(Rng& rng) {
  const std::size_t d = small(rng, 1, 4);
  return d == 1 ? Base::interval() : Base::simplex(d);
}

std::vector<IFunction> gammas_for(const Context& ctx, const FiniteCase& fc, Rng& rng) {
  std::vector<IFunction> out;
  for (std::size_t i = 0; i < std::min<std::size_t>(ctx.opts.samples, 4); ++i) out.push_back(random_function(rng, fc.space, 6));
  out.push_back(IFunction::constant(fc.space, UnitRational(1, 3)));
  return out;
}

IotaFixture random_iota_fixture(Rng& rng, std::size_t dim, std::size_t count) {
  std::vector<SimplexPoint> pts;
  for (std::size_t i = 0; i < dim; ++i) pts.push_back(SimplexPoint::vertex(dim, i));
  while (pts.size() < count) {
    SimplexPoint p = random_simplex_point(rng, dim);
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
  }
  std::vector<IotaElement> elements;
  for (auto& p : pts) elements.push_back(IotaElement::canonical(std::move(p)));
  return make_iota_fixture(Base::simplex(dim), std::move(elements), standard_homs(rng, dim, 2));
}

std::vector<Named> codensity_checks() {
  std::vector<Named> c;

  c.push_back({"iota-lemma-cD", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (std::size_t i = 0; i < 4 * ctx.opts.samples; ++i) {
                   ++o.cases;
                   const std::size_t n = random_dim(rng), m = random_dim(rng);
                   const auto k = random_affine_map(rng, n, m);
                   const SimplexPoint b = random_simplex_point(rng, n);
                   take(o, iota_equal(iota_arrow(k, IotaElement::canonical(b)), IotaElement::canonical(apply_affine(k, b)),
                                      standard_homs(rng, m, 3)),
                        "b=" + to_string(b));
                 }
                 return o;
               }});

  c.push_back({"cone-commutation", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   for (const auto& p : measures_for(ctx, fc, rng)) {
                     const ConeAtPoint cone = lambda_cone(gamma(p));
                     ++o.cases;
                     const Base from = random_base(rng);
                     const Base to = random_base(rng);
                     const SliceObject f = random_slice(rng, fc.space, from);
                     take(o, check_cone_condition(cone, f, random_affine_map(rng, from.dim, to.dim), to, standard_homs(rng, to.dim, 3)),
                          fc.tag + " P=" + to_string(p));
                   }
                 }
                 return o;
               }});

  c.push_back({"theta-roundtrip", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   const auto extra = functions_for(ctx, fc, rng);
                   for (const auto& p : measures_for(ctx, fc, rng)) {
                     ++o.cases;
                     const Functional theta0 = gamma(p);
                     take(o, extensionally_equal(theta_mediator(lambda_cone(theta0), fc.space), theta0, extra),
                          fc.tag + " theta0=" + to_string(p));
                   }
                 }
                 return o;
               }});

  auto theta_report = [](CheckOutcome& o, const ThetaReport& r, const std::string& where) {
    take(o, r.cone_conditions, where + " cone conditions");
    take(o, r.weakly_averaging, where + " weakly-averaging");
    take(o, r.affine, where + " affine");
    take(o, r.affine_via_pairs, where + " affine via pairs");
    take(o, r.preserves_limits, where + " preserves-limits (monotone chains)");
  };

  c.push_back({"theta-properties", [theta_report](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   for (std::size_t i = 0; i < std::min<std::size_t>(ctx.opts.samples, 4); ++i) {
                     ++o.cases;
                     const Measure p = random_measure(rng, fc.space);
                     theta_report(o,
                                  check_theta(lambda_cone(gamma(p)), fc.space, gammas_for(ctx, fc, rng), lemma_alphas(),
                                              standard_homs(rng, 2, 2)),
                                  fc.tag + " P=" + to_string(p));
                   }
                 }
                 return o;
               }});

  c.push_back({"theta-equals-mu", [theta_report](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   const auto extra = functions_for(ctx, fc, rng);
                   for (std::size_t i = 0; i < std::min<std::size_t>(ctx.opts.samples, 6); ++i) {
                     ++o.cases;
                     const auto q = random_q(rng, fc.space, small(rng, 1, 3));
                     const ConeAtPoint cone = multiplication_cone(q);
                     take(o, extensionally_equal(theta_mediator(cone, fc.space), t_join(q, fc.space), extra), fc.tag + " Q#" + std::to_string(i));
                     theta_report(o, check_theta(cone, fc.space, gammas_for(ctx, fc, rng), lemma_alphas(), standard_homs(rng, 2, 2)),
                                  fc.tag + " Q#" + std::to_string(i));
                   }
                 }
                 return o;
               }});

  c.push_back({"epsilon-counit", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (std::size_t i = 0; i < ctx.opts.samples; ++i) {
                   const std::size_t n = random_dim(rng);
                   const IotaFixture fx = random_iota_fixture(rng, n, n + small(rng, 0, 3));
                   const auto homs = standard_homs(rng, n, 3);
                   for (Point x = 0; x < fx.elements.size(); ++x) {
                     ++o.cases;
                     take(o, iota_equal(epsilon(fx, unit(fx.space, x)), fx.elements[x], homs), "eps(eta x) at x=" + std::to_string(x));
                   }
                   const Measure p = random_measure(rng, fx.space);
                   const IotaElement e = epsilon(fx, gamma(p));
                   for (const auto& h : homs) {
                     ++o.cases;
                     Rational expected = 0;
                     for (Point x = 0; x < fx.elements.size(); ++x) expected += p.mass_of_atom(fx.space->atom_of(x)).value() * fx.elements[x](h).value();
                     if (e(h).value() != expected) o.fail("eps(P)[h] != sum_x P(x) x[h] for P=" + to_string(p));
                   }
                 }
                 return o;
               }});

  c.push_back({"epsilon-naturality", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (std::size_t i = 0; i < 2 * ctx.opts.samples; ++i) {
                   ++o.cases;
                   const std::size_t n = random_dim(rng), m = random_dim(rng);
                   const IotaFixture fx = random_iota_fixture(rng, n, n + small(rng, 0, 2));
                   take(o, check_epsilon_naturality(fx, random_affine_map(rng, n, m), Base::simplex(m), standard_homs(rng, m, 2),
                                                    gamma(random_measure(rng, fx.space))),
                        "case#" + std::to_string(i));
                 }
                 return o;
               }});

  c.push_back({"unit-as-mediator", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   for (std::size_t i = 0; i < ctx.opts.samples; ++i) {
                     o.cases += fc.space->n_points();
                     const Base b = random_base(rng);
                     take(o, check_unit_as_mediator(random_slice(rng, fc.space, b), standard_homs(rng, b.dim, 2)), fc.tag);
                   }
                 }
                 return o;
               }});

  c.push_back({"mediator-uniqueness", [](const Context& ctx, Rng& rng) {
                 CheckOutcome o;
                 for (const auto& fc : ctx.finite) {
                   const auto ms = measures_for(ctx, fc, rng);
                   for (std::size_t i = 0; i < ms.size() && i < ctx.opts.samples; ++i) {
                     o.cases += 2;
                     take(o, check_mediator_uniqueness(gamma(ms[i]), gamma(ms[i])), fc.tag);
                     take(o, check_mediator_uniqueness(gamma(ms[i]), gamma(ms[(i + 1) % ms.size()])), fc.tag);
                   }
                 }
                 return o;
               }});
  return c;
}

std::vector<Named> checks_of(const std::string& name) {
  if (name == "laws") return laws_checks();
  if (name == "lemma-basic") return lemma_checks();
  if (name == "equivalence") return equivalence_checks();
  if (name == "codensity") return codensity_checks();
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"laws", "lemma-basic", "equivalence", "codensity"};
  return names;
}

std::vector<Fixture> default_fixtures(const VerifyOptions& opts) {
  std::vector<Fixture> out;
  for (std::uint64_t i = 0; i < 3; ++i) {
    Fixture f = generate_fixture("functional", opts.seed + i, opts.points, opts.atoms);
    f.source = "generated(seed=" + std::to_string(opts.seed + i) + ")";
    out.push_back(std::move(f));
  }
  Rng rng(opts.seed);
  Fixture n;
  n.source = "generated(N)";
  n.countable = true;
  n.countable_measures.push_back(random_countable_measure(rng));
  n.functional = FunctionalSpec{"canonical", "", {}, {}, {}};
  out.push_back(std::move(n));
  return out;
}

SuiteReport run_suite(const std::string& name, std::vector<Fixture> fixtures, const VerifyOptions& opts) {
  const std::vector<std::string> names = name == "all" ? suite_names() : std::vector<std::string>{name};
  if (fixtures.empty()) fixtures = default_fixtures(opts);
  auto ctx = std::make_shared<const Context>(std::move(fixtures), opts);

  std::vector<CheckSpec> specs;
  for (const auto& suite : names) {
    for (auto& named : checks_of(suite)) {
      const std::string id = name == "all" ? suite + "/" + named.id : named.id;
      specs.push_back({id, [ctx, id, body = std::move(named.body)] {
                         Rng rng(seed_for(ctx->opts, id));
                         return body(*ctx, rng);
                       }});
    }
  }
  return run_checks(name, specs);
}

}  // namespace giry
