#include "giry/equivalence.hpp"

#include <algorithm>

namespace giry {

namespace {

std::string gate_failure(const PropertyGate& gate) {
  if (!gate.weakly_averaging) return "not weakly averaging: " + gate.weakly_averaging.witness;
  if (!gate.affine) return "not affine: " + gate.affine.witness;
  return "does not preserve limits: " + gate.preserves_limits.witness;
}

const FiniteMixture<Functional>& require_support(const FunctionalOnFunctionals& q) {
  if (!q.support()) throw std::invalid_argument("phi . phi needs a finite-support element of T(T(X))");
  return *q.support();
}

}  // namespace

Measure phi(const Functional& g, PhiOptions options) {
  if (!g.certified() && options.property_gate) {
    const PropertyGate gate = run_property_gate(g);
    if (!gate.passed()) throw NotInT(g.name() + " " + gate_failure(gate), Rational(0));
  }
  const SpaceRef& space = g.space();
  std::vector<UnitRational> masses;
  Rational sum = 0;
  for (std::size_t a = 0; a < space->n_atoms(); ++a) {
    masses.push_back(g(indicator(MeasurableSet::of_atoms(space, {a}))));
    sum += masses.back().value();
  }
  if (sum != 1) {
    throw NotInT(g.name() + " atom masses sum to " + to_string(sum) + ", deficit " + to_string(Rational(1) - sum),
                 Rational(1) - sum);
  }
  return {space, std::move(masses)};
}

Functional gamma(const Measure& p) { return Functional::canonical(p); }

CountableMeasure phi_countable(const CountableFunctional& g, std::size_t horizon, PhiOptions options) {
  if (!g.certified() && options.property_gate) {
    const Verdict wa = check_weakly_averaging(g, rational_grid(4));
    if (!wa) throw NotInT(g.name() + " not weakly averaging: " + wa.witness, Rational(0));
    const Verdict lim = check_preserves_limits(g, CountableSet::all(), horizon);
    if (!lim) throw NotInT(g.name() + " does not preserve limits: " + lim.witness, Rational(0));
  }
  std::map<NatPoint, UnitRational> masses;
  Rational sum = 0;
  for (NatPoint n = 0; n < horizon; ++n) {
    const UnitRational m = g(indicator(CountableSet::singleton(n)));
    sum += m.value();
    masses.emplace(n, m);
  }
  if (sum != 1) {
    throw NotInT(g.name() + " singleton masses below " + std::to_string(horizon) + " sum to " + to_string(sum) +
                     ", deficit " + to_string(Rational(1) - sum),
                 Rational(1) - sum);
  }
  return CountableMeasure(std::move(masses));
}

Verdict check_naturality(const MeasurableFn& f, const Functional& g) {
  const Measure lhs = phi(t_pushforward(f, g));
  const Measure rhs = pushforward(phi(g), f);
  if (lhs == rhs) return Verdict::pass();
  return Verdict::fail("phi(T(f)G)=" + to_string(lhs) + " G(f)(phi G)=" + to_string(rhs));
}

MeasureOnMeasures horizontal_composite(const FunctionalOnFunctionals& q) {
  const auto& support = require_support(q);
  // Distinct extensional classes among the support.
  std::vector<Functional> classes;
  for (const auto& t : support.terms()) {
    const bool seen = std::any_of(classes.begin(), classes.end(),
                                  [&](const Functional& c) { return extensionally_equal(c, t.value).passed; });
    if (!seen) classes.push_back(t.value);
  }
  std::vector<MeasureOnMeasures::Term> terms;
  for (const auto& c : classes) {
    const UnitRational mass =
        q([&](const Functional& h) { return extensionally_equal(c, h).passed ? UnitRational::one() : UnitRational::zero(); });
    if (!mass.is_zero()) terms.push_back({mass, phi(c)});
  }
  return MeasureOnMeasures(std::move(terms));
}

MeasureOnMeasures horizontal_composite_via_t(const FunctionalOnFunctionals& q) {
  require_support(q);
  const auto pushed = map_over([](const Functional& g) { return phi(g); }, q);
  return *pushed.support();
}

bool same_distribution(const MeasureOnMeasures& a, const MeasureOnMeasures& b) {
  auto merged = [](const MeasureOnMeasures& m) {
    std::vector<std::pair<Measure, Rational>> out;
    for (const auto& t : m.terms()) {
      auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == t.value; });
      if (it == out.end()) {
        out.emplace_back(t.value, t.weight.value());
      } else {
        it->second += t.weight.value();
      }
    }
    std::erase_if(out, [](const auto& e) { return e.second == 0; });
    return out;
  };
  const auto ma = merged(a);
  const auto mb = merged(b);
  if (ma.size() != mb.size()) return false;
  return std::all_of(ma.begin(), ma.end(), [&](const auto& e) {
    return std::any_of(mb.begin(), mb.end(), [&](const auto& f) { return f.first == e.first && f.second == e.second; });
  });
}

MonadMorphismReport check_monad_morphism(const SpaceRef& space, const std::vector<Point>& points,
                                         const std::vector<FunctionalOnFunctionals>& qs) {
  MonadMorphismReport report;
  for (Point x : points) {
    const Measure lhs = phi(unit(space, x));
    if (!(lhs == dirac(space, x))) {
      report.left_square = Verdict::fail("x=" + std::to_string(x) + " phi(eta x)=" + to_string(lhs));
      break;
    }
  }
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const auto& q = qs[i];
    const MeasureOnMeasures composite = horizontal_composite(q);
    const Measure east_south = phi(t_join(q));
    const Measure south_east = join(composite);
    if (report.right_square && !(east_south == south_east)) {
      report.right_square = Verdict::fail("Q#" + std::to_string(i) + " phi(mu Q)=" + to_string(east_south) +
                                          " mu'(phi.phi Q)=" + to_string(south_east));
    }
    if (report.horizontal && !same_distribution(composite, horizontal_composite_via_t(q))) {
      report.horizontal = Verdict::fail("Q#" + std::to_string(i) + " routes of phi . phi disagree");
    }
  }
  return report;
}

Measure measure_of_alpha(const UnitRational& alpha) { return {discrete_space(2), {alpha, alpha.complement()}}; }

UnitRational alpha_of_measure(const Measure& p) {
  if (p.space()->n_atoms() != 2 || !p.space()->is_discrete()) throw std::invalid_argument("alpha_of_measure needs G(2)");
  return p.mass_of_atom(0);
}

std::vector<GiryTwoRow> giry_two_iso(const std::vector<UnitRational>& grid) {
  std::vector<GiryTwoRow> out;
  for (const auto& a : grid) out.push_back({a, measure_of_alpha(a)});
  return out;
}

Verdict check_giry_two_iso(const std::vector<GiryTwoRow>& table) {
  for (const auto& row : table) {
    if (alpha_of_measure(row.measure) != row.alpha) return Verdict::fail("alpha=" + to_string(row.alpha));
    if (!(measure_of_alpha(alpha_of_measure(row.measure)) == row.measure)) {
      return Verdict::fail("measure " + to_string(row.measure));
    }
  }
  return Verdict::pass();
}

Measure combine_measures(const Measure& p, const Measure& q, const UnitRational& r) {
  require_same_space(p.space(), q.space(), "combine_measures");
  std::vector<UnitRational> masses;
  for (std::size_t a = 0; a < p.atom_masses().size(); ++a)
    masses.push_back(cvx_combine(p.mass_of_atom(a), q.mass_of_atom(a), r));
  return {p.space(), std::move(masses)};
}

Verdict check_phi_affine(const Measure& p, const Measure& q, const UnitRational& r) {
  const Measure lhs = phi(combine_functionals(gamma(p), gamma(q), r));
  const Measure rhs = combine_measures(p, q, r);
  if (lhs == rhs) return Verdict::pass();
  return Verdict::fail("r=" + to_string(r) + " phi(mix)=" + to_string(lhs) + " mix=" + to_string(rhs));
}

Verdict check_generator_correspondence(const std::vector<Functional>& family, const MeasurableSet& s,
                                       const std::vector<UnitRational>& u) {
  auto in_u = [&](const UnitRational& v) { return std::find(u.begin(), u.end(), v) != u.end(); };
  for (std::size_t i = 0; i < family.size(); ++i) {
    const bool via_measure = in_u(phi(family[i])(s));
    const bool via_functional = in_u(family[i](indicator(s)));
    if (via_measure != via_functional) {
      return Verdict::fail("G#" + std::to_string(i) + " lies in only one of the two generator sets");
    }
  }
  return Verdict::pass();
}

}  // namespace giry
