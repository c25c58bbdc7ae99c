#ifndef EPSMULT_EPSILON_HPP
#define EPSMULT_EPSILON_HPP

#include "error.hpp"
#include "graded_pair.hpp"
#include "monomial_ideal.hpp"
#include "polytope.hpp"
#include "rational.hpp"
#include "valuation.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace epsmult {

enum class SequenceKind { saturation_quotient, truncated, truncated_saturation, field_case };

inline std::string to_string(SequenceKind k) {
  switch (k) {
  case SequenceKind::saturation_quotient:
    return "saturation-quotient";
  case SequenceKind::truncated:
    return "truncated";
  case SequenceKind::truncated_saturation:
    return "truncated-saturation";
  case SequenceKind::field_case:
    return "field-case";
  }
  return "unknown";
}

/// ℓ_0..ℓ_N, exact.
struct LengthSequence {
  SequenceKind kind = SequenceKind::saturation_quotient;
  std::vector<std::uint64_t> values;
  std::optional<unsigned> c;

  unsigned max_degree() const { return values.empty() ? 0 : unsigned(values.size() - 1); }
};

/// (dim B - 1)!·ℓ_n / n^{dim B - 1}; the n = 0 term is 0.
inline Rational normalized_value(std::uint64_t length, unsigned n, std::size_t dim_b) {
  if (n == 0 || dim_b == 0)
    return 0;
  const auto p = static_cast<unsigned>(dim_b - 1);
  return Rational(factorial(p) * length) / Rational(int_pow(BigInt(n), p));
}

inline std::vector<Rational> normalized_sequence(const LengthSequence& s, std::size_t dim_b) {
  std::vector<Rational> out;
  for (unsigned n = 0; n < s.values.size(); ++n)
    out.push_back(normalized_value(s.values[n], n, dim_b));
  return out;
}

/// Per-degree data of the saturation quotient: its length, the largest
/// degree of a monomial in it and one monomial of that degree.
struct SaturationSlice {
  std::uint64_t length = 0;
  std::optional<std::uint64_t> max_degree;
  ExponentVector witness_fiber;
  ExponentVector witness_base;
};

inline SaturationSlice saturation_slice(const GradedPair& p, unsigned n) {
  SaturationSlice out;
  if (n == 0)
    return out;
  for (const auto& c : saturated_component(p, n).components) {
    if (!c.live())
      continue;
    auto img = ideal_sum(p.a_component(c.fiber), c.annihilator);
    if (!quotient_is_finite(c.a_part, img))
      throw InvariantFailure("saturation quotient is infinite at degree " + std::to_string(n));
    out.length += enumerate_difference(
        c.a_part, img, [](const ExponentVector&) { return true; },
        [&](const ExponentVector& f) {
          if (!out.max_degree || f.degree() > *out.max_degree) {
            out.max_degree = f.degree();
            out.witness_fiber = c.fiber;
            out.witness_base = f;
          }
        });
  }
  return out;
}

/// ℓ_n = ℓ((A_n :_{B_n} m_R^∞)/A_n) for n = 0..N.
inline LengthSequence epsilon_length_sequence(const GradedPair& p, unsigned N) {
  if (p.base_count() == 0)
    throw PreconditionError("base ring is a field; use the field-case sequence");
  require_hypotheses(p);
  LengthSequence s{SequenceKind::saturation_quotient, {0}, std::nullopt};
  for (unsigned n = 1; n <= N; ++n)
    s.values.push_back(saturation_slice(p, n).length);
  return s;
}

/// dim_k B_n - dim_k A_n when R is the field k: live μ outside A.
inline std::uint64_t field_case_term(const GradedPair& p, unsigned n) {
  if (p.base_count() != 0)
    throw PreconditionError("field-case sequence requires no base variables");
  std::uint64_t k = 0;
  for (const auto& c : component_basis(p, n).components)
    if (c.live() && c.a_part.is_zero())
      ++k;
  return k;
}

inline LengthSequence field_case_sequence(const GradedPair& p, unsigned N) {
  if (p.base_count() != 0)
    throw PreconditionError("field-case sequence requires no base variables");
  LengthSequence s{SequenceKind::field_case, {0}, std::nullopt};
  for (unsigned n = 1; n <= N; ++n)
    s.values.push_back(field_case_term(p, n));
  return s;
}

/// Field case: ℓ_n agrees with a polynomial of degree ≤ p for large n, so the
/// p-th finite difference is eventually p!·(leading coefficient). Returns it
/// when the last `confirm` differences agree.
inline std::optional<Rational> field_case_limit(const LengthSequence& s, std::size_t dim_b,
                                                unsigned confirm = 3) {
  if (dim_b == 0)
    return std::nullopt;
  const auto p = dim_b - 1;
  std::vector<BigInt> diff;
  for (auto v : s.values)
    diff.emplace_back(v);
  for (std::size_t k = 0; k < p; ++k) {
    if (diff.size() < 2)
      return std::nullopt;
    for (std::size_t i = 0; i + 1 < diff.size(); ++i)
      diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
  }
  if (diff.size() < confirm + 1)
    return std::nullopt;
  for (std::size_t i = diff.size() - confirm; i < diff.size(); ++i)
    if (diff[i] != diff.back())
      return std::nullopt;
  return Rational(diff.back());
}

/// ℓ(J_n / (m_R^{cn}B) ∩ J_n) with J = A, or J = the saturation.
inline LengthSequence truncated_sequence(const GradedPair& p, unsigned c, unsigned N,
                                         bool saturated = false) {
  if (p.base_count() == 0)
    throw PreconditionError("truncated sequence needs at least one base variable");
  if (c == 0)
    throw PreconditionError("truncation slope c must be positive");
  LengthSequence s{saturated ? SequenceKind::truncated_saturation : SequenceKind::truncated,
                   {0},
                   c};
  for (unsigned n = 1; n <= N; ++n) {
    std::uint64_t total = 0;
    auto dec = saturated ? saturated_component(p, n) : component_basis(p, n);
    for (const auto& comp : dec.components) {
      if (!comp.live())
        continue;
      total += count_below_degree(ideal_sum(comp.a_part, comp.annihilator), comp.annihilator,
                                  std::uint64_t(c) * n);
    }
    s.values.push_back(total);
  }
  return s;
}

struct StabilizationWitness {
  unsigned c = 0;
  unsigned n = 0;
  std::string monomial;
};

struct StabilizationReport {
  std::optional<unsigned> c0;
  unsigned certified_range = 0;
  unsigned c_max = 0;
  /// One witness per c < c0 (or per c ≤ c_max on failure).
  std::vector<StabilizationWitness> witnesses;
  /// Whether the ideal-containment route agreed at c0 for every n.
  bool containment_confirmed = false;
};

/// Least c ≤ c_max with m_R^{cn}B_n ∩ (A_n : m^∞) ⊆ A_n for all n ≤ N.
inline StabilizationReport stabilization_search(const GradedPair& p, unsigned c_max, unsigned N) {
  if (p.base_count() == 0)
    throw PreconditionError("stabilization needs at least one base variable");
  require_hypotheses(p);
  StabilizationReport r;
  r.c_max = c_max;
  r.certified_range = N;
  std::vector<SaturationSlice> slices(N + 1);
  for (unsigned n = 1; n <= N; ++n)
    slices[n] = saturation_slice(p, n);
  auto fails = [&](unsigned c, unsigned n) {
    return slices[n].max_degree && *slices[n].max_degree >= std::uint64_t(c) * n;
  };
  auto witness = [&](unsigned c, unsigned n) {
    const auto& s = slices[n];
    return StabilizationWitness{c, n, format_monomial(p.join(s.witness_base, s.witness_fiber),
                                                      p.variables())};
  };
  for (unsigned c = 1; c <= c_max; ++c) {
    std::optional<unsigned> bad;
    for (unsigned n = 1; n <= N; ++n)
      if (fails(c, n)) {
        bad = n;
        if (c < c_max)
          break;
      }
    if (!bad) {
      r.c0 = c;
      break;
    }
    r.witnesses.push_back(witness(c, *bad));
  }
  if (r.c0) {
    const auto d = p.base_count();
    bool ok = true;
    for (unsigned n = 1; n <= N && ok; ++n)
      for (const auto& comp : saturated_component(p, n).components) {
        if (!comp.live())
          continue;
        auto mc = ideal_power(MonomialIdeal::maximal(d), *r.c0 * n);
        auto img = ideal_sum(p.a_component(comp.fiber), comp.annihilator);
        if (!img.contains(monomial_intersection(comp.a_part, mc))) {
          ok = false;
          break;
        }
      }
    if (!ok)
      throw InvariantFailure("degree route and containment route disagree on c0");
    r.containment_confirmed = true;
  }
  return r;
}

/// Termwise check of truncated(sat) - truncated(A) = ε sequence.
inline bool short_exact_check(const LengthSequence& trunc_a, const LengthSequence& trunc_sat,
                              const LengthSequence& eps) {
  const auto n = std::min({trunc_a.values.size(), trunc_sat.values.size(), eps.values.size()});
  for (std::size_t i = 0; i < n; ++i)
    if (trunc_sat.values[i] != trunc_a.values[i] + eps.values[i])
      return false;
  return true;
}

struct DecompositionRow {
  unsigned n = 0;
  std::uint64_t truncated = 0;
  std::uint64_t value_quotient = 0;
  std::uint64_t value_quotient_bar = 0;
  std::uint64_t gamma_size = 0;
  std::uint64_t gamma_below = 0;
  std::uint64_t gamma_bar_size = 0;
  std::uint64_t gamma_bar_below = 0;
};

struct DecompositionVerdict {
  bool eq1 = true;
  bool eq2 = true;
  bool eq3 = true;
  std::vector<DecompositionRow> rows;
  std::optional<std::string> counterexample;
};

/// Exact check of
///   ℓ(A_n/(m^{cn}B)∩A_n) = ℓ(A_n/K_{βn}∩A_n) - ℓ(Ā_n/K_{βn}∩Ā_n)
/// and of the Γ counts against the value-filtered lengths of A_n and Ā_n.
/// The Γ comparison uses the points with value < βn.
inline DecompositionVerdict eq1_decomposition_check(const GradedPair& p, unsigned c,
                                                    const Rational& beta,
                                                    const ValuationOrder& v, unsigned N) {
  if (beta < Rational(izumi_alpha(v) * (c + 1)))
    throw PreconditionError("beta must be at least alpha*(c+1)");
  DecompositionVerdict out;
  auto trunc = truncated_sequence(p, c, N);
  auto gamma = gamma_points(p, v, c, beta, N);
  out.rows.push_back({});
  for (unsigned n = 1; n <= N; ++n) {
    DecompositionRow row;
    row.n = n;
    row.truncated = trunc.values[n];
    const Rational bound = beta * n;
    row.value_quotient = value_quotient_length(p, v, n, bound);
    row.value_quotient_bar = value_quotient_length(p, v, n, bound, c);
    row.gamma_size = gamma.gamma.level_sizes[n];
    row.gamma_bar_size = gamma.gamma_bar.level_sizes[n];
    row.gamma_below = gamma_points_below(gamma.gamma, v, n);
    row.gamma_bar_below = gamma_points_below(gamma.gamma_bar, v, n);
    if (row.value_quotient < row.value_quotient_bar ||
        row.truncated != row.value_quotient - row.value_quotient_bar) {
      out.eq1 = false;
      if (!out.counterexample)
        for (const auto& mu : fiber_monomials(p.fiber_count(), n)) {
          auto ann = p.annihilator(mu);
          if (ann.is_unit())
            continue;
          auto img = ideal_sum(p.a_component(mu), ann);
          enumerate_difference(
              img, ann, [&](const ExponentVector& x) { return x.degree() < std::uint64_t(c) * n; },
              [&](const ExponentVector& x) {
                if (!out.counterexample && v.value(p.join(x, mu)) >= bound)
                  out.counterexample = "n=" + std::to_string(n) + " monomial " +
                                       format_monomial(p.join(x, mu), p.variables());
              });
        }
    }
    if (row.gamma_below != row.value_quotient)
      out.eq2 = false;
    if (row.gamma_bar_below != row.value_quotient_bar)
      out.eq3 = false;
    out.rows.push_back(row);
  }
  return out;
}

/// e(I) = d!·vol(R^d_{≥0} ∖ Newton polyhedron) for an m-primary monomial I.
inline Rational newton_multiplicity(const MonomialIdeal& ideal) {
  if (!is_m_primary(ideal))
    throw PreconditionError("newton_multiplicity requires an m-primary ideal");
  const auto d = ideal.ambient();
  Exponent top = 0;
  for (const auto& g : ideal.generators())
    for (auto x : g)
      top = std::max(top, x);
  const Rational M = Rational(top) + 1;
  // Newton polyhedron ∩ [0,M]^d = conv of the boxes [g, M].
  std::vector<RationalPoint> pts;
  for (const auto& g : ideal.generators())
    for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
      RationalPoint q(d);
      for (std::size_t i = 0; i < d; ++i)
        q[i] = ((mask >> i) & 1u) ? M : Rational(g[i]);
      pts.push_back(std::move(q));
    }
  Rational box = rational_pow(M, static_cast<unsigned>(d));
  return Rational(factorial(static_cast<unsigned>(d))) * (box - hull_volume(pts));
}

struct BoundWitness {
  std::string label;
  unsigned exponent = 0;
  Rational gamma;
  unsigned range = 0;
  unsigned argmax = 0;
  bool certified = true;
};

/// Ratio test shared with the semigroup boundedness check: a sequence whose
/// ratio r(n) = ℓ_n/n^p at the end of the range exceeds 1.5 times every
/// earlier r(k), k ≤ n/2, is growing faster than n^p. Returns the offending n.
inline std::optional<unsigned> growth_violation(const std::vector<Rational>& ratios) {
  if (ratios.size() < 5)
    return std::nullopt;
  const auto n = static_cast<unsigned>(ratios.size() - 1);
  Rational early = 0;
  for (unsigned k = 1; k <= n / 2; ++k)
    early = std::max(early, ratios[k]);
  if (early > 0 && ratios[n] > early * Rational(3, 2))
    return n;
  return std::nullopt;
}

inline BoundWitness fit_bound(const std::string& label, const LengthSequence& s, unsigned p) {
  BoundWitness w{label, p, 0, s.max_degree(), 0, true};
  std::vector<Rational> ratios{0};
  for (unsigned n = 1; n < s.values.size(); ++n) {
    Rational r = Rational(s.values[n]) / Rational(int_pow(BigInt(n), p));
    ratios.push_back(r);
    if (r > w.gamma) {
      w.gamma = r;
      w.argmax = n;
    }
  }
  if (auto bad = growth_violation(ratios)) {
    w.certified = false;
    w.argmax = *bad;
  }
  return w;
}

/// Certifies ℓ_n ≤ γ n^{dim A - 1} for the truncated sequence (absent in
/// the field case) and ℓ_n ≤ α n^{dim B - 1} for the ε sequence.
inline std::vector<BoundWitness> bound_checks(const KrullDims& dims, const LengthSequence& epsilon,
                                              const std::optional<LengthSequence>& truncated) {
  if (dims.dim_a > dims.dim_b)
    throw InvariantFailure("dim A exceeds dim B");
  std::vector<BoundWitness> out;
  const auto pa = dims.dim_a == 0 ? 0u : static_cast<unsigned>(dims.dim_a - 1);
  const auto pb = dims.dim_b == 0 ? 0u : static_cast<unsigned>(dims.dim_b - 1);
  if (truncated)
    out.push_back(fit_bound(to_string(truncated->kind), *truncated, pa));
  out.push_back(fit_bound(to_string(epsilon.kind), epsilon, pb));
  for (const auto& w : out)
    if (!w.certified)
      throw InvariantFailure("growth bound violated for the " + w.label + " sequence at n=" +
                             std::to_string(w.argmax));
  return out;
}

} // namespace epsmult

#endif
