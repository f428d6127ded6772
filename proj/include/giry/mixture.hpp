#pragma once

#include <functional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "giry/rational.hpp"

namespace giry {

/**
 * A finitely supported probability distribution over values of T, written
 * sum_i w_i [t_i] with sum_i w_i = 1. Represents elements of G(G(X)) (and
 * G^3(X)) for the Giry side and the finite-support elements of T(T(X)) on
 * the functional side.
 */
template <class T>
class FiniteMixture {
 public:
  struct Term {
    UnitRational weight;
    T value;
  };

  explicit FiniteMixture(std::vector<Term> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("mixture needs at least one term");
    Rational sum = 0;
    for (const auto& t : terms_) sum += t.weight.value();
    if (sum != 1) throw std::invalid_argument("mixture weights sum to " + to_string(sum) + ", not 1");
  }

  static FiniteMixture point_mass(T value) { return FiniteMixture({Term{UnitRational::one(), std::move(value)}}); }

  /// w [a] + (1-w) [b].
  static FiniteMixture binary(const UnitRational& w, T a, T b) {
    return FiniteMixture({Term{w, std::move(a)}, Term{w.complement(), std::move(b)}});
  }

  const std::vector<Term>& terms() const noexcept { return terms_; }

  /// sum_i w_i xi(t_i): integration of an I-valued function.
  template <class F>
  UnitRational expect(F&& xi) const {
    Rational sum = 0;
    for (const auto& t : terms_) sum += t.weight.value() * UnitRational(xi(t.value)).value();
    return UnitRational(sum);
  }

  /// Pushforward along m.
  template <class F>
  auto map(F&& m) const -> FiniteMixture<std::decay_t<std::invoke_result_t<F&, const T&>>> {
    using U = std::decay_t<std::invoke_result_t<F&, const T&>>;
    std::vector<typename FiniteMixture<U>::Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.weight, m(t.value)});
    return FiniteMixture<U>(std::move(out));
  }

 private:
  std::vector<Term> terms_;
};

/// sum_i w_i sum_j v_ij [t_ij]: the multiplication of the finite
/// distribution monad.
template <class T>
FiniteMixture<T> flatten(const FiniteMixture<FiniteMixture<T>>& nested) {
  std::vector<typename FiniteMixture<T>::Term> out;
  for (const auto& outer : nested.terms())
    for (const auto& inner : outer.value.terms()) out.push_back({outer.weight * inner.weight, inner.value});
  return FiniteMixture<T>(std::move(out));
}

}  // namespace giry
