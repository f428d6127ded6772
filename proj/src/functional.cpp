#include "giry/functional.hpp"

#include <algorithm>
#include <stdexcept>

namespace giry {

Functional::Functional(SpaceRef space, Kind kind, std::string name, FunctionalBody body,
                       std::optional<Measure> measure)
    : space_(std::move(space)), kind_(kind), name_(std::move(name)), body_(std::move(body)),
      measure_(std::move(measure)) {
  if (!space_) throw std::invalid_argument("functional without a space");
}

Functional Functional::canonical(Measure p, std::string name) {
  SpaceRef space = p.space();
  FunctionalBody body = [p](const IFunction& f) { return integrate(p, f); };
  return {std::move(space), Kind::canonical, std::move(name), std::move(body), std::move(p)};
}

Functional Functional::derived(SpaceRef space, std::string name, FunctionalBody body) {
  return {std::move(space), Kind::derived, std::move(name), std::move(body), std::nullopt};
}

Functional Functional::black_box(SpaceRef space, std::string name, FunctionalBody body) {
  return {std::move(space), Kind::black_box, std::move(name), std::move(body), std::nullopt};
}

UnitRational Functional::operator()(const IFunction& f) const {
  require_same_space(space_, f.space(), "functional evaluation");
  return body_(f);
}

UnitRational eval(const Functional& g, const IFunction& f) { return g(f); }

Functional unit(const SpaceRef& space, Point x) {
  return Functional::canonical(dirac(space, x), "ev_" + std::to_string(x));
}

Functional t_pushforward(const MeasurableFn& f, const Functional& g) {
  require_same_space(g.space(), f.dom(), "t_pushforward");
  if (!is_measurable(f)) throw std::invalid_argument("t_pushforward along a non-measurable map");
  FunctionalBody body = [f, g](const IFunction& h) { return g(precompose(h, f)); };
  const std::string name = "T(f)(" + g.name() + ")";
  return g.certified() ? Functional::derived(f.cod(), name, std::move(body))
                      : Functional::black_box(f.cod(), name, std::move(body));
}

Functional t_join(const FunctionalOnFunctionals& q, SpaceRef space) {
  bool certified = true;
  if (q.support()) {
    for (const auto& t : q.support()->terms()) {
      if (!space) space = t.value.space();
      require_same_space(space, t.value.space(), "t_join");
      certified = certified && t.value.certified();
    }
  }
  if (!space) throw std::invalid_argument("t_join of a functional without support needs an explicit space");
  FunctionalBody body = [q](const IFunction& f) { return q([&](const Functional& g) { return g(f); }); };
  return certified ? Functional::derived(space, "mu(Q)", std::move(body))
                   : Functional::black_box(space, "mu(Q)", std::move(body));
}

FunctionalOnFunctionals t_lift_unit(const Functional& g) {
  const SpaceRef space = g.space();
  std::optional<FiniteMixture<Functional>> support;
  if (g.measure()) {
    std::vector<FiniteMixture<Functional>::Term> terms;
    for (std::size_t a = 0; a < space->n_atoms(); ++a) {
      const auto& m = g.measure()->mass_of_atom(a);
      if (!m.is_zero()) terms.push_back({m, unit(space, space->representative(a))});
    }
    support.emplace(std::move(terms));
  }
  return FunctionalOnFunctionals(
      [g, space](const FunctionalOnFunctionals::Test& xi) {
        std::vector<UnitRational> values;
        values.reserve(space->n_atoms());
        for (std::size_t a = 0; a < space->n_atoms(); ++a) values.push_back(xi(unit(space, space->representative(a))));
        return g(IFunction(space, std::move(values)));
      },
      std::move(support));
}

Functional combine_functionals(const Functional& g, const Functional& h, const UnitRational& r) {
  require_same_space(g.space(), h.space(), "combine_functionals");
  FunctionalBody body = [g, h, r](const IFunction& f) { return cvx_combine(g(f), h(f), r); };
  const std::string name = "(" + g.name() + " +_" + to_string(r) + " " + h.name() + ")";
  return g.certified() && h.certified() ? Functional::derived(g.space(), name, std::move(body))
                                        : Functional::black_box(g.space(), name, std::move(body));
}

std::string describe(const IFunction& f) {
  std::string out = "(";
  for (std::size_t a = 0; a < f.atom_values().size(); ++a) out += (a ? "," : "") + to_string(f.at_atom(a));
  return out + ")";
}

std::string describe(const CountableIFunction& f) {
  std::string out = "{";
  bool first = true;
  for (const auto& [n, v] : f.exceptions()) {
    out += (first ? "" : ",") + std::to_string(n) + ":" + to_string(v);
    first = false;
  }
  return out + "; tail " + to_string(f.tail()) + "}";
}

Verdict check_weakly_averaging(const Functional& g, const std::vector<UnitRational>& samples) {
  return check_weakly_averaging_with(g, samples, [&](const UnitRational& u) { return IFunction::constant(g.space(), u); });
}

Verdict check_preserves_limits(const Functional& g, const IFunction& f,
                               const std::vector<std::vector<IFunction>>& chains) {
  const UnitRational target = g(f);
  for (std::size_t c = 0; c < chains.size(); ++c) {
    const auto& chain = chains[c];
    for (std::size_t k = 0; k < chain.size(); ++k) {
      if (!chain[k].leq(f)) throw std::invalid_argument("limit chain element not below f");
      if (k > 0 && !chain[k - 1].leq(chain[k])) throw std::invalid_argument("limit chain is not monotone");
    }
    for (std::size_t k = 0; k < chain.size(); ++k) {
      const UnitRational v = g(chain[k]);
      if (v > target) {
        return Verdict::fail("f=" + describe(f) + " chain#" + std::to_string(c) + " psi=" + describe(chain[k]) +
                             " G(psi)=" + to_string(v) + " exceeds G(f)=" + to_string(target));
      }
    }
  }
  return Verdict::pass();
}

std::vector<std::vector<IFunction>> standard_limit_chains(const IFunction& f, std::size_t steps) {
  std::vector<std::vector<IFunction>> chains(2);
  for (std::size_t k = 0; k <= steps; ++k) {
    chains[0].push_back(f.scaled(UnitRational(static_cast<std::int64_t>(k), static_cast<std::int64_t>(steps))));
  }
  const SpaceRef& space = f.space();
  std::vector<Rational> acc(space->n_atoms(), Rational(0));
  for (const auto& term : telescoping_decompose(f).terms) {
    for (std::size_t a = 0; a < acc.size(); ++a)
      if (term.set.contains_atom(a)) acc[a] += term.coef.value();
    std::vector<UnitRational> values;
    for (const auto& v : acc) values.emplace_back(v);
    chains[1].emplace_back(space, std::move(values));
  }
  return chains;
}

Verdict extensionally_equal(const Functional& a, const Functional& b, const std::vector<IFunction>& extra) {
  if (!same_space(a.space(), b.space())) return Verdict::fail("functionals live on different spaces");
  std::vector<IFunction> tests;
  const SpaceRef& space = a.space();
  if (space->n_atoms() <= 10) {
    for (const auto& s : all_measurable_sets(space)) tests.push_back(indicator(s));
  } else {
    for (std::size_t i = 0; i < space->n_atoms(); ++i) tests.push_back(indicator(MeasurableSet::of_atoms(space, {i})));
  }
  tests.insert(tests.end(), extra.begin(), extra.end());
  for (const auto& f : tests) {
    const UnitRational va = a(f);
    const UnitRational vb = b(f);
    if (va != vb) return Verdict::fail("f=" + describe(f) + " " + to_string(va) + " vs " + to_string(vb));
  }
  return Verdict::pass();
}

namespace {

/// Indicators of the atoms, of X and of the empty set, plus a ramp taking
/// value i/(n-1) on atom i.
std::vector<IFunction> gate_functions(const SpaceRef& space) {
  std::vector<IFunction> out;
  const std::size_t n = space->n_atoms();
  for (std::size_t i = 0; i < n; ++i) out.push_back(indicator(MeasurableSet::of_atoms(space, {i})));
  out.push_back(indicator(MeasurableSet::full(space)));
  out.push_back(indicator(MeasurableSet::empty(space)));
  if (n > 1) {
    std::vector<UnitRational> ramp;
    for (std::size_t i = 0; i < n; ++i) ramp.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(n - 1));
    out.emplace_back(space, std::move(ramp));
  }
  return out;
}

}  // namespace

PropertyGate run_property_gate(const Functional& g) {
  PropertyGate gate;
  gate.weakly_averaging = check_weakly_averaging(g, rational_grid(4));
  const auto functions = gate_functions(g.space());
  std::vector<AffineSample<IFunction>> samples;
  for (const auto& f : functions)
    for (const auto& h : functions)
      for (const auto& r : {UnitRational(1, 2), UnitRational(1, 3)}) samples.push_back({f, h, r});
  gate.affine = check_affine(g, samples);
  gate.preserves_limits = Verdict::pass();
  for (const auto& f : functions) {
    gate.preserves_limits = check_preserves_limits(g, f, standard_limit_chains(f));
    if (!gate.preserves_limits) break;
  }
  return gate;
}

CountableFunctional CountableFunctional::canonical(CountableMeasure p) {
  return {"integral", [p](const CountableIFunction& f) { return integrate(p, f); }, true};
}

CountableFunctional CountableFunctional::black_box(std::string name, CountableBody body) {
  return {std::move(name), std::move(body), false};
}

Verdict check_weakly_averaging(const CountableFunctional& g, const std::vector<UnitRational>& samples) {
  return check_weakly_averaging_with(g, samples, [](const UnitRational& u) { return CountableIFunction::constant(u); });
}

Verdict check_preserves_limits(const CountableFunctional& g, const CountableSet& s, std::size_t horizon) {
  const UnitRational target = g(indicator(s));
  const auto members = s.first_members(horizon);
  std::vector<NatPoint> prefix;
  UnitRational last = g(indicator(CountableSet::empty()));
  for (NatPoint n : members) {
    prefix.push_back(n);
    const UnitRational v = g(indicator(CountableSet::finite(prefix)));
    if (v < last) return Verdict::fail("truncation values decrease at N=" + std::to_string(prefix.size()));
    if (v > target) {
      return Verdict::fail("G(chi_{first " + std::to_string(prefix.size()) + "})=" + to_string(v) +
                           " exceeds G(chi_S)=" + to_string(target));
    }
    last = v;
  }
  if (last != target) {
    return Verdict::fail("truncations of S stop at " + to_string(last) + " after " + std::to_string(members.size()) +
                         " members but G(chi_S)=" + to_string(target));
  }
  return Verdict::pass();
}

bool LemmaBasicReport::all_passed() const {
  return std::all_of(items.begin(), items.end(), [](const Verdict& v) { return v.passed; });
}

std::vector<int> LemmaBasicReport::failed_items() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < items.size(); ++i)
    if (!items[i].passed) out.push_back(static_cast<int>(i) + 1);
  return out;
}

LemmaBasicSamples<MeasurableSet, IFunction> finite_lemma_samples(
    const SpaceRef& space, std::vector<std::pair<MeasurableSet, MeasurableSet>> pairs,
    const std::vector<IFunction>& functions, const std::vector<UnitRational>& alphas) {
  LemmaBasicSamples<MeasurableSet, IFunction> out{MeasurableSet::full(space), std::move(pairs), {}, {}};
  auto add_cover = [&](const MeasurableSet& s) {
    std::vector<MeasurableSet> pieces;
    for (std::size_t a : s.atom_indices()) pieces.push_back(MeasurableSet::of_atoms(space, {a}));
    out.covers.emplace_back(s, std::move(pieces));
  };
  add_cover(out.whole);
  for (const auto& [s, t] : out.pairs) {
    add_cover(s);
    add_cover(t);
  }
  for (const auto& alpha : alphas) {
    out.scalings.emplace_back(alpha, indicator(out.whole));
    for (const auto& [s, t] : out.pairs) out.scalings.emplace_back(alpha, indicator(s));
    for (const auto& f : functions) out.scalings.emplace_back(alpha, f);
  }
  return out;
}

LemmaBasicSamples<CountableSet, CountableIFunction> countable_lemma_samples(
    std::vector<std::pair<CountableSet, CountableSet>> pairs, const std::vector<UnitRational>& alphas,
    std::size_t horizon) {
  LemmaBasicSamples<CountableSet, CountableIFunction> out{CountableSet::all(), std::move(pairs), {}, {}};
  auto add_cover = [&](const CountableSet& s) {
    std::vector<CountableSet> pieces;
    for (NatPoint n : s.first_members(horizon)) pieces.push_back(CountableSet::singleton(n));
    out.covers.emplace_back(s, std::move(pieces));
  };
  add_cover(out.whole);
  for (const auto& [s, t] : out.pairs) {
    add_cover(s);
    add_cover(t);
  }
  for (const auto& alpha : alphas) {
    out.scalings.emplace_back(alpha, indicator(out.whole));
    for (const auto& [s, t] : out.pairs) out.scalings.emplace_back(alpha, indicator(s));
  }
  return out;
}

namespace adversarial {

Functional square_at_point(const SpaceRef& space, Point x0) {
  if (x0 >= space->n_points()) throw std::out_of_range("square_at_point: point outside the space");
  return Functional::black_box(space, "square-at-point", [x0](const IFunction& f) { return f(x0) * f(x0); });
}

Declaration square_at_point_declaration() { return {"square-at-point", {"weakly-averaging", "affine"}, {6}}; }

Functional max_over_atoms(const SpaceRef& space) {
  return Functional::black_box(space, "max-over-atoms", [](const IFunction& f) {
    return *std::max_element(f.atom_values().begin(), f.atom_values().end());
  });
}

Declaration max_over_atoms_declaration() { return {"max-over-atoms", {"affine"}, {2, 3, 5}}; }

CountableFunctional tail_limit(const CountableMeasure& p, const UnitRational& integral_weight) {
  return CountableFunctional::black_box("tail-limit", [p, integral_weight](const CountableIFunction& f) {
    return cvx_combine(integrate(p, f), f.tail(), integral_weight);
  });
}

Declaration tail_limit_declaration() { return {"tail-limit", {"preserves-limits"}, {5}}; }

}  // namespace adversarial

}  // namespace giry
