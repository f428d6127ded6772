#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "giry/convex.hpp"
#include "giry/countable.hpp"
#include "giry/giry.hpp"
#include "giry/measurable.hpp"
#include "giry/mixture.hpp"

namespace giry {

using FunctionalBody = std::function<UnitRational(const IFunction&)>;

/**
 * A map G : I^X -> I, the candidate element of T(X).
 *
 * Three kinds exist:
 *  - canonical: backed by a measure, G(f) = integral of f. In T(X) by construction.
 *  - derived:   built by the T operations (unit, pushforward, join, mixing)
 *               from certified inputs; also in T(X) by construction.
 *  - black box: an arbitrary host function with no guarantee; the property
 *               checkers exist to refute these.
 *
 * Bodies must be pure and reentrant.
 */
class Functional {
 public:
  enum class Kind { canonical, derived, black_box };

  static Functional canonical(Measure p, std::string name = "integral");
  static Functional derived(SpaceRef space, std::string name, FunctionalBody body);
  static Functional black_box(SpaceRef space, std::string name, FunctionalBody body);

  /// Throws std::invalid_argument on space mismatch.
  UnitRational operator()(const IFunction& f) const;

  const SpaceRef& space() const noexcept { return space_; }
  Kind kind() const noexcept { return kind_; }
  bool certified() const noexcept { return kind_ != Kind::black_box; }
  /// The backing measure of a canonical functional.
  const std::optional<Measure>& measure() const noexcept { return measure_; }
  const std::string& name() const noexcept { return name_; }

 private:
  Functional(SpaceRef space, Kind kind, std::string name, FunctionalBody body, std::optional<Measure> measure);

  SpaceRef space_;
  Kind kind_;
  std::string name_;
  FunctionalBody body_;
  std::optional<Measure> measure_;
};

UnitRational eval(const Functional& g, const IFunction& f);

/**
 * An element of T(A) for A a space of functionals (A = Functional gives
 * T(T(X))). Evaluated on tests xi : A -> I. When built from a finite mixture
 * the support is kept, so that Q(xi) = sum_i w_i xi(a_i) stays inspectable.
 */
template <class A>
class FunctionalOver {
 public:
  using Test = std::function<UnitRational(const A&)>;
  using Body = std::function<UnitRational(const Test&)>;

  FunctionalOver(Body body, std::optional<FiniteMixture<A>> support = std::nullopt)
      : body_(std::move(body)), support_(std::move(support)) {}

  static FunctionalOver from_mixture(FiniteMixture<A> m) {
    return FunctionalOver([m](const Test& xi) { return m.expect(xi); }, m);
  }

  UnitRational operator()(const Test& xi) const { return body_(xi); }
  const std::optional<FiniteMixture<A>>& support() const noexcept { return support_; }

 private:
  Body body_;
  std::optional<FiniteMixture<A>> support_;
};

using FunctionalOnFunctionals = FunctionalOver<Functional>;

/// eta at level A: a |-> ev_a.
template <class A>
FunctionalOver<A> unit_over(const A& a) {
  return FunctionalOver<A>::from_mixture(FiniteMixture<A>::point_mass(a));
}

/// T(m) : T(A) -> T(B), Q |-> (xi |-> Q(xi o m)).
template <class A, class M>
auto map_over(M m, const FunctionalOver<A>& q) {
  using B = std::decay_t<std::invoke_result_t<M&, const A&>>;
  std::optional<FiniteMixture<B>> support;
  if (q.support()) support = q.support()->map(m);
  return FunctionalOver<B>(
      [m, q](const typename FunctionalOver<B>::Test& xi) {
        return q([&](const A& a) { return xi(m(a)); });
      },
      std::move(support));
}

/// mu at level A: R |-> (xi |-> R(Q |-> Q(xi))).
template <class A>
FunctionalOver<A> join_over(const FunctionalOver<FunctionalOver<A>>& r) {
  std::optional<FiniteMixture<A>> support;
  if (r.support()) {
    bool all = true;
    for (const auto& t : r.support()->terms()) all = all && t.value.support().has_value();
    if (all) support = flatten(r.support()->map([](const FunctionalOver<A>& q) { return *q.support(); }));
  }
  return FunctionalOver<A>(
      [r](const typename FunctionalOver<A>::Test& xi) {
        return r([&](const FunctionalOver<A>& q) { return q(xi); });
      },
      std::move(support));
}

/// The unit x |-> ev_x.
Functional unit(const SpaceRef& space, Point x);

/// T(f)(G) = (h |-> G(h o f)). Throws if f is not measurable.
Functional t_pushforward(const MeasurableFn& f, const Functional& g);

/// mu_X(Q) = (f |-> Q(ev_f)). The space comes from the support when there
/// is one; otherwise `space` is required. Throws on mixed spaces.
Functional t_join(const FunctionalOnFunctionals& q, SpaceRef space = nullptr);

/// T(eta_X)(G) = (xi |-> G(x |-> xi(ev_x))).
FunctionalOnFunctionals t_lift_unit(const Functional& g);

/// The pointwise convex structure of T(X): (G +_r H)(f) = G(f) +_r H(f).
Functional combine_functionals(const Functional& g, const Functional& h, const UnitRational& r);

// ---------------------------------------------------------------------------
// Property checkers

std::string describe(const IFunction& f);
std::string describe(const CountableIFunction& f);

/// G(u) = u for every constant u in `samples`.
template <class Fn, class Constant>
Verdict check_weakly_averaging_with(const Fn& g, const std::vector<UnitRational>& samples, Constant&& make_constant) {
  for (const auto& u : samples) {
    const UnitRational value = g(make_constant(u));
    if (value != u) return Verdict::fail("u=" + to_string(u) + " G(u)=" + to_string(value));
  }
  return Verdict::pass();
}

Verdict check_weakly_averaging(const Functional& g, const std::vector<UnitRational>& samples);

template <class Func>
struct AffineSample {
  Func f;
  Func g;
  UnitRational r;
};

/// G(f +_r g) = G(f) +_r G(g) on every sample; reports the first violation.
template <class Fn, class Func>
Verdict check_affine(const Fn& g, const std::vector<AffineSample<Func>>& samples) {
  for (const auto& s : samples) {
    const UnitRational lhs = g(pointwise_combine(s.f, s.g, s.r));
    const UnitRational rhs = cvx_combine(g(s.f), g(s.g), s.r);
    if (lhs != rhs) {
      return Verdict::fail("f=" + describe(s.f) + " g=" + describe(s.g) + " r=" + to_string(s.r) +
                           " LHS=" + to_string(lhs) + " RHS=" + to_string(rhs));
    }
  }
  return Verdict::pass();
}

/**
 * Compares G(f) with the supremum of G over the supplied simple functions
 * below f, together with f itself. Each chain must be pointwise <= f and
 * monotone increasing (std::invalid_argument otherwise). For a black box this
 * can refute but never certify.
 */
Verdict check_preserves_limits(const Functional& g, const IFunction& f,
                               const std::vector<std::vector<IFunction>>& chains);

/// Monotone chains of simple functions below f: k/steps * f for k = 0..steps,
/// and the partial sums of the telescoping decomposition of f.
std::vector<std::vector<IFunction>> standard_limit_chains(const IFunction& f, std::size_t steps = 4);

/// Extensional equality: agreement on every indicator of a measurable set and
/// on each extra function.
Verdict extensionally_equal(const Functional& a, const Functional& b, const std::vector<IFunction>& extra = {});

/// The three-property gate applied to black boxes: weak averaging on a grid
/// of constants, affinity on indicator pairs and mixtures, and the standard
/// limit chains on every indicator.
struct PropertyGate {
  Verdict weakly_averaging;
  Verdict affine;
  Verdict preserves_limits;
  bool passed() const { return weakly_averaging && affine && preserves_limits; }
};
PropertyGate run_property_gate(const Functional& g);

// ---------------------------------------------------------------------------
// Functionals on the countable space

using CountableBody = std::function<UnitRational(const CountableIFunction&)>;

class CountableFunctional {
 public:
  static CountableFunctional canonical(CountableMeasure p);
  static CountableFunctional black_box(std::string name, CountableBody body);

  UnitRational operator()(const CountableIFunction& f) const { return body_(f); }
  bool certified() const noexcept { return certified_; }
  const std::string& name() const noexcept { return name_; }

 private:
  CountableFunctional(std::string name, CountableBody body, bool certified)
      : name_(std::move(name)), body_(std::move(body)), certified_(certified) {}
  std::string name_;
  CountableBody body_;
  bool certified_;
};

Verdict check_weakly_averaging(const CountableFunctional& g, const std::vector<UnitRational>& samples);

/// The truncation chain chi_{first N members of S}, N = 1..horizon, must
/// climb to G(chi_S). Refutes within the horizon only.
Verdict check_preserves_limits(const CountableFunctional& g, const CountableSet& s, std::size_t horizon);

// ---------------------------------------------------------------------------
// The six identities satisfied by every element of T(X)

inline constexpr std::array<const char*, 6> kLemmaBasicIds = {
    "lemma-basic-i", "lemma-basic-ii", "lemma-basic-iii", "lemma-basic-iv", "lemma-basic-v", "lemma-basic-vi"};

struct LemmaBasicReport {
  std::array<Verdict, 6> items;
  bool all_passed() const;
  /// 1-based item numbers that failed.
  std::vector<int> failed_items() const;
};

template <class Set, class Func>
struct LemmaBasicSamples {
  Set whole;
  std::vector<std::pair<Set, Set>> pairs;
  /// A set together with a disjoint cover of it (a finite prefix for an
  /// infinite cover); partial sums must reach G(chi_S) by the end.
  std::vector<std::pair<Set, std::vector<Set>>> covers;
  std::vector<std::pair<UnitRational, Func>> scalings;
};

/**
 * Checks, for a functional G:
 *  (i)   G(chi_X) = 1, G(chi_empty) = 0
 *  (ii)  G(chi_{S^c}) = 1 - G(chi_S)
 *  (iii) G(chi_{S n T}) + G(chi_{S u T}) = G(chi_S) + G(chi_T)
 *  (iv)  S subset T implies G(chi_S) <= G(chi_T)
 *  (v)   partial sums over a disjoint cover climb to G(chi_S)
 *  (vi)  G(alpha f) = alpha G(f)
 */
template <class Fn, class Set, class Func>
LemmaBasicReport lemma_basic_suite(const Fn& g, const LemmaBasicSamples<Set, Func>& samples) {
  LemmaBasicReport report;
  auto fail = [&](int item, auto&& witness) {
    if (report.items[item].passed) report.items[item] = Verdict::fail(witness());
  };
  auto val = [&](const Set& s) { return g(indicator(s)).value(); };
  const Set empty = samples.whole.complement();

  if (val(samples.whole) != 1 || val(empty) != 0) {
    fail(0, [&] { return "G(chi_X)=" + to_string(val(samples.whole)) + " G(chi_empty)=" + to_string(val(empty)); });
  }
  std::size_t pair_index = 0;
  for (const auto& [s, t] : samples.pairs) {
    const auto tag = [&] { return "pair#" + std::to_string(pair_index) + " "; };
    for (const Set* x : {&s, &t}) {
      if (val(x->complement()) != 1 - val(*x)) {
        fail(1, [&] { return tag() + "G(chi_S)=" + to_string(val(*x)) + " G(chi_S^c)=" + to_string(val(x->complement())); });
      }
    }
    if (val(s & t) + val(s | t) != val(s) + val(t)) {
      fail(2, [&] {
        return tag() + "G(SnT)+G(SuT)=" + to_string(val(s & t) + val(s | t)) + " G(S)+G(T)=" + to_string(val(s) + val(t));
      });
    }
    const std::array<std::pair<Set, Set>, 3> nested = {{{s & t, t}, {s, s | t}, {s, t}}};
    for (const auto& [small, large] : nested) {
      if (small.subset_of(large) && val(small) > val(large)) {
        fail(3, [&] { return tag() + "S subset T but G(S)=" + to_string(val(small)) + " > G(T)=" + to_string(val(large)); });
      }
    }
    ++pair_index;
  }
  for (const auto& [s, cover] : samples.covers) {
    Rational partial = 0;
    const Rational target = val(s);
    bool overshoot = false;
    for (const auto& piece : cover) {
      partial += val(piece);
      overshoot = overshoot || partial > target;
    }
    if (overshoot || partial != target) {
      fail(4, [&] {
        return "cover of " + std::to_string(cover.size()) + " pieces: partial sum " + to_string(partial) +
               " vs G(chi_S)=" + to_string(target);
      });
    }
  }
  for (const auto& [alpha, f] : samples.scalings) {
    const UnitRational lhs = g(f.scaled(alpha));
    const UnitRational rhs = alpha * g(f);
    if (lhs != rhs) {
      fail(5, [&] {
        return "alpha=" + to_string(alpha) + " f=" + describe(f) + " G(alpha f)=" + to_string(lhs) +
               " alpha G(f)=" + to_string(rhs);
      });
    }
  }
  return report;
}

/// Samples on a finite space: all set pairs up to `max_pairs` (in a fixed
/// order), the atom cover of every set in them, and alpha-scalings of the
/// indicators and of `functions`.
LemmaBasicSamples<MeasurableSet, IFunction> finite_lemma_samples(const SpaceRef& space,
                                                                 std::vector<std::pair<MeasurableSet, MeasurableSet>> pairs,
                                                                 const std::vector<IFunction>& functions,
                                                                 const std::vector<UnitRational>& alphas);

/// Samples on N: the given pairs, singleton covers of every set in them up to
/// `horizon` pieces, and alpha-scalings of their indicators.
LemmaBasicSamples<CountableSet, CountableIFunction> countable_lemma_samples(
    std::vector<std::pair<CountableSet, CountableSet>> pairs, const std::vector<UnitRational>& alphas,
    std::size_t horizon);

// ---------------------------------------------------------------------------
// Adversarial black boxes

namespace adversarial {

/// Which checks a named adversarial functional is designed to fail.
struct Declaration {
  std::string kind;
  std::vector<std::string> violated_properties;  // among weakly-averaging, affine, preserves-limits
  std::vector<int> lemma_items;                  // 1-based
};

/// f |-> f(x0)^2. Not weakly averaging (1/2 |-> 1/4) and not affine.
Functional square_at_point(const SpaceRef& space, Point x0);
Declaration square_at_point_declaration();

/// f |-> max over atoms. Weakly averaging, monotone, not affine; on
/// indicators it breaks complementation, modularity and additivity over covers.
Functional max_over_atoms(const SpaceRef& space);
Declaration max_over_atoms_declaration();

/// f |-> w * integral(f, P) + (1-w) * tail(f) on N. Weakly averaging and
/// affine, but its value at chi_N is not the limit over finite truncations.
CountableFunctional tail_limit(const CountableMeasure& p, const UnitRational& integral_weight);
Declaration tail_limit_declaration();

}  // namespace adversarial

}  // namespace giry
