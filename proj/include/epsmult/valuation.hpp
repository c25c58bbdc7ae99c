#ifndef EPSMULT_VALUATION_HPP
#define EPSMULT_VALUATION_HPP

#include "error.hpp"
#include "exponent.hpp"
#include "graded_pair.hpp"
#include "rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace epsmult {

/// (Σ λ_i f_i, f) ordered by weight, then lex on f.
struct Value {
  Rational weight;
  ExponentVector exponent;

  bool operator==(const Value&) const = default;
  std::strong_ordering operator<=>(const Value& o) const {
    if (weight < o.weight)
      return std::strong_ordering::less;
    if (weight > o.weight)
      return std::strong_ordering::greater;
    return exponent <=> o.exponent;
  }
};

/// ν(f) = Σ λ_i f_i, totalised by the lexicographic order on exponents.
class ValuationOrder {
public:
  explicit ValuationOrder(std::vector<Rational> weights) : w_(std::move(weights)) {
    for (const auto& w : w_)
      if (w < 1)
        throw PreconditionError("valuation weights must be >= 1, got " + to_fraction_string(w));
  }

  std::size_t size() const noexcept { return w_.size(); }
  const std::vector<Rational>& weights() const noexcept { return w_; }
  /// Residue degree [S/m_S : R/m_R]; always 1 for monomial valuations.
  static constexpr unsigned residue_degree() { return 1; }

  Rational value(const ExponentVector& f) const {
    if (f.size() != w_.size())
      throw DimensionMismatch("valuation over " + std::to_string(w_.size()) +
                              " variables applied to a monomial of length " +
                              std::to_string(f.size()));
    Rational v = 0;
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (f[i])
        v += w_[i] * f[i];
    return v;
  }

  /// The totalised value: distinct monomials get distinct values.
  Value total(const ExponentVector& f) const { return {value(f), f}; }

  std::strong_ordering compare(const ExponentVector& a, const ExponentVector& b) const {
    return total(a) <=> total(b);
  }

  Rational max_weight() const {
    Rational m = 1;
    for (const auto& w : w_)
      m = std::max(m, w);
    return m;
  }

private:
  std::vector<Rational> w_;
};

/// Weights for all D ambient variables. When only the base weights are
/// given the fiber variables get weight 1.
inline ValuationOrder make_valuation(std::vector<Rational> weights, std::size_t D,
                                     std::size_t d = 0) {
  if (weights.size() == d && d < D)
    weights.resize(D, Rational(1));
  if (weights.size() != D)
    throw PreconditionError("expected " + std::to_string(D) + " weights, got " +
                            std::to_string(weights.size()));
  return ValuationOrder(std::move(weights));
}

/// α = ⌈max λ_i⌉, so ν(f) ≥ αn forces deg f ≥ n.
inline unsigned izumi_alpha(const ValuationOrder& v) {
  return static_cast<unsigned>(ceil_of(v.max_weight()));
}

/// Exhaustive check of K_{αn} ∩ B ⊆ m_B^n over monomials of degree ≤ cap:
/// a violation would be some f with ν(f) ≥ α(deg f + 1). Returns the first
/// violating monomial, if any.
inline std::optional<ExponentVector> izumi_counterexample(const ValuationOrder& v,
                                                          unsigned degree_cap) {
  const auto D = v.size();
  const Rational alpha = izumi_alpha(v);
  ExponentVector cur(D);
  std::optional<ExponentVector> bad;
  auto rec = [&](auto&& self, std::size_t pos, unsigned left) -> void {
    if (bad)
      return;
    if (pos == D) {
      if (v.value(cur) >= alpha * (cur.degree() + 1))
        bad = cur;
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      cur[pos] = k;
      self(self, pos + 1, left - k);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, degree_cap);
  return bad;
}

/// dim (A_n ∩ K_λ)/(A_n ∩ K_λ⁺) for a totalised value λ: 1 exactly when λ is
/// the value of a monomial of A_n that is nonzero in B.
inline unsigned value_slot_dimension(const GradedPair& p, const ValuationOrder& v, unsigned n,
                                     const Value& lambda) {
  const auto& f = lambda.exponent;
  if (f.size() != p.ambient() || v.value(f) != lambda.weight)
    return 0;
  auto mu = p.y_part(f);
  if (mu.degree() != n)
    return 0;
  auto x = p.x_part(f);
  if (p.annihilator(mu).contains(x))
    return 0;
  return p.a_component(mu).contains(x) ? 1 : 0;
}

/// Monomials of A_n (nonzero in B) with value exactly λ and strictly below λ.
/// Monomials above λ form an infinite set unless A_n = 0; `above` is 0 in
/// that case and empty otherwise.
struct ValueFilterCount {
  unsigned at = 0;
  std::uint64_t below = 0;
  std::optional<std::uint64_t> above;
};

inline ValueFilterCount value_filter_count(const GradedPair& p, const ValuationOrder& v,
                                           unsigned n, const Value& lambda) {
  if (v.size() != p.ambient())
    throw DimensionMismatch("valuation does not match the pair's variables");
  ValueFilterCount out;
  out.at = value_slot_dimension(p, v, n, lambda);
  bool nonzero = false;
  for (const auto& mu : fiber_monomials(p.fiber_count(), n)) {
    auto ann = p.annihilator(mu);
    if (ann.is_unit())
      continue;
    auto img = ideal_sum(p.a_component(mu), ann);
    if (img == ann)
      continue;
    nonzero = true;
    enumerate_difference(
        img, ann, [&](const ExponentVector& x) { return v.value(p.join(x, mu)) <= lambda.weight; },
        [&](const ExponentVector& x) {
          if (v.total(p.join(x, mu)) < lambda)
            ++out.below;
        });
  }
  if (!nonzero)
    out.above = 0;
  return out;
}

/// One enumerated point of Γ: the exponent vector over all ambient variables
/// and the level n.
struct GammaPoint {
  ExponentVector exponent;
  unsigned level = 0;
  auto operator<=>(const GammaPoint&) const = default;
};

struct GammaSemigroup {
  unsigned t = 1;
  Rational beta;
  unsigned max_level = 0;
  std::vector<GammaPoint> points;
  std::vector<std::uint64_t> level_sizes;
};

struct GammaPair {
  GammaSemigroup gamma;
  GammaSemigroup gamma_bar;
};

namespace detail {

/// Calls visit(x) for each x-exponent with |x| ≤ bound.
template <class Visit>
void for_each_bounded(std::size_t d, std::uint64_t bound, Visit&& visit) {
  ExponentVector cur(d);
  auto rec = [&](auto&& self, std::size_t pos, std::uint64_t left) -> void {
    if (pos == d) {
      visit(cur);
      return;
    }
    for (std::uint64_t k = 0; k <= left; ++k) {
      cur[pos] = static_cast<Exponent>(k);
      self(self, pos + 1, left - k);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, bound);
}

} // namespace detail

/// Γ^(1) and Γ̄^(1) for levels 1..N: points (f, n) with f a monomial of A_n
/// (resp. of Ā_n = m^{cn}B ∩ A_n) whose value slot is one dimensional, and
/// whose base exponents satisfy n_1 + ... + n_d ≤ βn. Built by scanning the
/// box of exponents and testing membership, independently of the
/// value-filtered counts. B must be a domain (Δ = 0), otherwise products of
/// nonzero monomials can vanish and Γ is not a semigroup.
inline GammaPair gamma_points(const GradedPair& p, const ValuationOrder& v, unsigned c,
                              const Rational& beta, unsigned N) {
  if (p.base_count() == 0)
    throw PreconditionError("gamma points need at least one base variable");
  if (!p.delta().is_zero())
    throw PreconditionError("gamma points need B to be a domain (empty delta)");
  require_hypotheses(p);
  GammaPair out;
  for (auto* g : {&out.gamma, &out.gamma_bar}) {
    g->beta = beta;
    g->max_level = N;
    g->level_sizes.assign(N + 1, 0);
  }
  const auto d = p.base_count();
  for (unsigned n = 1; n <= N; ++n) {
    const auto bound = static_cast<std::uint64_t>(floor_of(beta * n));
    for (const auto& mu : fiber_monomials(p.fiber_count(), n)) {
      auto ann = p.annihilator(mu);
      if (ann.is_unit())
        continue;
      auto a = p.a_component(mu);
      detail::for_each_bounded(d, bound, [&](const ExponentVector& x) {
        if (!a.contains(x) || ann.contains(x))
          return;
        auto f = p.join(x, mu);
        if (value_slot_dimension(p, v, n, v.total(f)) < 1)
          return;
        out.gamma.points.push_back({f, n});
        ++out.gamma.level_sizes[n];
        if (x.degree() >= std::uint64_t(c) * n) {
          out.gamma_bar.points.push_back({f, n});
          ++out.gamma_bar.level_sizes[n];
        }
      });
    }
  }
  std::sort(out.gamma.points.begin(), out.gamma.points.end());
  std::sort(out.gamma_bar.points.begin(), out.gamma_bar.points.end());
  return out;
}

/// ℓ(A_n / K_λ ∩ A_n) (or the Ā_n version when `bar_c` is set): monomials of
/// the component images with value < λ.
inline std::uint64_t value_quotient_length(const GradedPair& p, const ValuationOrder& v,
                                           unsigned n, const Rational& lambda,
                                           std::optional<unsigned> bar_c = std::nullopt) {
  std::uint64_t total = 0;
  for (const auto& mu : fiber_monomials(p.fiber_count(), n)) {
    auto ann = p.annihilator(mu);
    if (ann.is_unit())
      continue;
    auto img = ideal_sum(p.a_component(mu), ann);
    if (bar_c)
      img = ideal_sum(monomial_intersection(
                          img, ideal_power(MonomialIdeal::maximal(p.base_count()), *bar_c * n)),
                      ann);
    total += enumerate_difference(
        img, ann, [&](const ExponentVector& x) { return v.value(p.join(x, mu)) < lambda; },
        [](const ExponentVector&) {});
  }
  return total;
}

/// Points of a Γ level with value < βn: the part of #Γ_n that the value
/// filtration actually measures.
inline std::uint64_t gamma_points_below(const GammaSemigroup& g, const ValuationOrder& v,
                                        unsigned n) {
  std::uint64_t k = 0;
  for (const auto& pt : g.points)
    if (pt.level == n && v.value(pt.exponent) < g.beta * n)
      ++k;
  return k;
}

/// Spot check of additive closure: every sum of two points whose levels add
/// to at most N must itself be enumerated. Returns the first missing sum.
inline std::optional<GammaPoint> gamma_closure_gap(const GammaSemigroup& g) {
  std::vector<GammaPoint> sorted = g.points;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i; j < sorted.size(); ++j) {
      if (sorted[i].level + sorted[j].level > g.max_level)
        continue;
      GammaPoint s{sorted[i].exponent + sorted[j].exponent, sorted[i].level + sorted[j].level};
      if (!std::binary_search(sorted.begin(), sorted.end(), s))
        return s;
    }
  return std::nullopt;
}

} // namespace epsmult

#endif
