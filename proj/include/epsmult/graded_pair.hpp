#ifndef EPSMULT_GRADED_PAIR_HPP
#define EPSMULT_GRADED_PAIR_HPP

#include "error.hpp"
#include "exponent.hpp"
#include "lattice.hpp"
#include "monomial_ideal.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <string>
#include <vector>

namespace epsmult {

/// Textual description of a pair as it appears in instance files.
struct PairDescription {
  std::vector<std::string> base_variables;
  std::vector<std::string> fiber_variables;
  std::vector<std::string> delta;
  std::vector<std::string> subalgebra_generators;
};

/// A ⊂ B with B = k[x_1..x_d, y_1..y_e]/Δ graded by y-degree and A generated
/// over R = k[x]_(x) by monomials of y-degree one. Variables are ordered
/// base first; exponent vectors have length d + e.
///
/// Copies share the memo for A-components; it is write-once per key, so
/// concurrent readers always see value-equal results.
class GradedPair {
public:
  GradedPair(VariableSet vars, std::size_t d, MonomialIdeal delta, std::vector<ExponentVector> a_gens)
      : vars_(std::move(vars)), d_(d), delta_(std::move(delta)), a_gens_(std::move(a_gens)),
        memo_(std::make_shared<Memo>()) {
    const auto e = fiber_count();
    fiber_gens_.assign(e, MonomialIdeal::zero(d_));
    std::vector<std::vector<ExponentVector>> parts(e);
    for (const auto& g : a_gens_)
      for (std::size_t j = 0; j < e; ++j)
        if (g[d_ + j] == 1)
          parts[j].push_back(x_part(g));
    for (std::size_t j = 0; j < e; ++j)
      fiber_gens_[j] = minimalize(d_, std::move(parts[j]));
  }

  const VariableSet& variables() const noexcept { return vars_; }
  std::size_t base_count() const noexcept { return d_; }
  std::size_t fiber_count() const noexcept { return vars_.size() - d_; }
  std::size_t ambient() const noexcept { return vars_.size(); }
  const MonomialIdeal& delta() const noexcept { return delta_; }
  const std::vector<ExponentVector>& generators() const noexcept { return a_gens_; }
  /// G_j: x-parts of the generators carrying y_j.
  const MonomialIdeal& fiber_generators(std::size_t j) const { return fiber_gens_.at(j); }

  ExponentVector x_part(const ExponentVector& v) const {
    return ExponentVector(std::vector<Exponent>(v.begin(), v.begin() + d_));
  }
  ExponentVector y_part(const ExponentVector& v) const {
    return ExponentVector(std::vector<Exponent>(v.begin() + d_, v.end()));
  }
  ExponentVector join(const ExponentVector& x, const ExponentVector& y) const {
    std::vector<Exponent> out(x.begin(), x.end());
    out.insert(out.end(), y.begin(), y.end());
    return ExponentVector(std::move(out));
  }

  /// {x^a : x^a·μ ∈ Δ}.
  MonomialIdeal annihilator(const ExponentVector& mu) const {
    std::vector<ExponentVector> gens;
    for (const auto& g : delta_.generators())
      if (y_part(g).divides(mu))
        gens.push_back(x_part(g));
    return minimalize(d_, std::move(gens));
  }

  /// {x^a : x^a·μ ∈ A} as an ideal of k[x] (before reduction modulo Δ).
  MonomialIdeal a_component(const ExponentVector& mu) const {
    {
      std::shared_lock lock(memo_->mutex);
      auto it = memo_->table.find(mu);
      if (it != memo_->table.end())
        return it->second;
    }
    MonomialIdeal result = MonomialIdeal::zero(d_);
    if (mu.is_zero()) {
      result = MonomialIdeal::unit(d_);
    } else {
      for (std::size_t j = 0; j < mu.size(); ++j) {
        if (mu[j] == 0 || fiber_gens_[j].is_zero())
          continue;
        ExponentVector prev = mu;
        prev[j] -= 1;
        auto below = a_component(prev);
        if (below.is_zero())
          continue;
        result = ideal_sum(result, ideal_product(fiber_gens_[j], below));
      }
    }
    std::unique_lock lock(memo_->mutex);
    return memo_->table.try_emplace(mu, std::move(result)).first->second;
  }

private:
  struct Memo {
    std::shared_mutex mutex;
    std::map<ExponentVector, MonomialIdeal> table;
  };

  VariableSet vars_;
  std::size_t d_ = 0;
  MonomialIdeal delta_;
  std::vector<ExponentVector> a_gens_;
  std::vector<MonomialIdeal> fiber_gens_;
  std::shared_ptr<Memo> memo_;
};

inline GradedPair build_pair(const PairDescription& desc) {
  if (desc.fiber_variables.empty())
    throw IngestionError("at least one fiber variable is required");
  std::vector<std::string> names = desc.base_variables;
  names.insert(names.end(), desc.fiber_variables.begin(), desc.fiber_variables.end());
  VariableSet vars(std::move(names));
  const auto d = desc.base_variables.size();
  const auto D = vars.size();

  std::vector<ExponentVector> dgens;
  for (const auto& s : desc.delta) {
    auto m = parse_monomial(s, vars);
    for (auto x : m)
      if (x > 1)
        throw IngestionError("delta generator '" + s + "' is not squarefree");
    if (m.is_zero())
      throw IngestionError("delta generator '1' makes B the zero ring");
    dgens.push_back(std::move(m));
  }
  auto delta = minimalize(D, std::move(dgens));

  std::vector<ExponentVector> gens;
  for (const auto& s : desc.subalgebra_generators) {
    auto m = parse_monomial(s, vars);
    std::uint64_t ydeg = 0;
    for (std::size_t j = d; j < D; ++j)
      ydeg += m[j];
    if (ydeg != 1)
      throw IngestionError("subalgebra generator '" + s + "' has fiber degree " +
                           std::to_string(ydeg) + ", expected 1");
    if (delta.contains(m))
      throw IngestionError("subalgebra generator '" + s + "' lies in delta (zero in B)");
    gens.push_back(std::move(m));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return GradedPair(std::move(vars), d, std::move(delta), std::move(gens));
}

/// All exponent vectors of length `e` and total degree `n`, in lex order
/// descending from y_1^n.
inline std::vector<ExponentVector> fiber_monomials(std::size_t e, unsigned n) {
  std::vector<ExponentVector> out;
  if (e == 0) {
    if (n == 0)
      out.emplace_back(0);
    return out;
  }
  ExponentVector cur(e);
  auto rec = [&](auto&& self, std::size_t pos, unsigned left) -> void {
    if (pos + 1 == e) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      cur[pos] = k;
      self(self, pos + 1, left - k);
    }
  };
  rec(rec, 0, n);
  return out;
}

/// The μ-component of a degree-n piece: B_μ = R/ann, A_μ = (a_part + ann)/ann.
struct Component {
  ExponentVector fiber;
  MonomialIdeal a_part;
  MonomialIdeal annihilator;
  bool live() const { return !annihilator.is_unit(); }
  /// Preimage in k[x] of the image of A in B_μ.
  MonomialIdeal image() const { return ideal_sum(a_part, annihilator); }
};

struct ComponentDecomposition {
  unsigned degree = 0;
  std::vector<Component> components;
};

/// Every μ of y-degree n with its annihilator and A-part; dead components
/// (annihilator (1)) are kept so callers can see them.
inline ComponentDecomposition component_basis(const GradedPair& p, unsigned n) {
  ComponentDecomposition out{n, {}};
  for (auto& mu : fiber_monomials(p.fiber_count(), n)) {
    auto ann = p.annihilator(mu);
    auto a = p.a_component(mu);
    out.components.push_back({std::move(mu), std::move(a), std::move(ann)});
  }
  return out;
}

inline std::vector<std::size_t> base_indices(const GradedPair& p) {
  std::vector<std::size_t> v(p.base_count());
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

/// Componentwise (A_n :_{B_n} m_R^∞). The a_part of each returned component
/// is the preimage of the saturation, which already contains the annihilator.
inline ComponentDecomposition saturated_component(const GradedPair& p, unsigned n) {
  if (p.base_count() == 0)
    throw PreconditionError("saturation is undefined over a field; use the field-case sequence");
  auto dec = component_basis(p, n);
  const auto vars = base_indices(p);
  for (auto& c : dec.components)
    c.a_part = c.live() ? saturate(c.image(), vars) : MonomialIdeal::unit(p.base_count());
  return dec;
}

/// Minimal primes of B as generating variable sets (complements of the
/// facets of the Stanley–Reisner complex of Δ).
struct PrimeDecomposition {
  std::vector<std::vector<std::size_t>> primes;
  std::vector<std::vector<std::size_t>> facets;
};

inline PrimeDecomposition minimal_primes(const GradedPair& p) {
  const auto D = p.ambient();
  if (D > 20)
    throw BudgetExceeded("facet enumeration limited to 20 variables");
  const std::uint32_t full = (1u << D) - 1;
  auto is_face = [&](std::uint32_t s) {
    ExponentVector v(D);
    for (std::size_t i = 0; i < D; ++i)
      v[i] = (s >> i) & 1u;
    return !p.delta().contains(v);
  };
  std::vector<std::uint32_t> faces;
  for (std::uint32_t s = 0; s <= full; ++s)
    if (is_face(s))
      faces.push_back(s);
  PrimeDecomposition out;
  for (auto f : faces) {
    bool maximal = true;
    for (std::size_t i = 0; i < D && maximal; ++i)
      if (!((f >> i) & 1u) && is_face(f | (1u << i)))
        maximal = false;
    if (!maximal)
      continue;
    std::vector<std::size_t> facet, prime;
    for (std::size_t i = 0; i < D; ++i)
      (((f >> i) & 1u) ? facet : prime).push_back(i);
    out.facets.push_back(std::move(facet));
    out.primes.push_back(std::move(prime));
  }
  return out;
}

struct HypothesisReport {
  bool reduced = true;
  bool field_case = false;
  /// Per prime: P_i ∩ R ≠ m_R.
  std::vector<bool> prime_ok;
  bool holds = true;
  std::vector<std::string> witness_facet;
};

inline HypothesisReport check_hypotheses(const GradedPair& p) {
  HypothesisReport r;
  r.field_case = p.base_count() == 0;
  auto primes = minimal_primes(p);
  for (const auto& facet : primes.facets) {
    bool has_base = false;
    for (auto i : facet)
      if (i < p.base_count())
        has_base = true;
    r.prime_ok.push_back(has_base || r.field_case);
    if (!has_base && !r.field_case && r.holds) {
      r.holds = false;
      for (auto i : facet)
        r.witness_facet.push_back(p.variables().name(i));
    }
  }
  return r;
}

inline void require_hypotheses(const GradedPair& p) {
  auto r = check_hypotheses(p);
  if (!r.holds) {
    std::string f;
    for (const auto& n : r.witness_facet)
      f += (f.empty() ? "" : ",") + n;
    throw HypothesisFailure("a minimal prime contracts to the maximal ideal of R (facet {" + f +
                                "} has no base variable)",
                            r.witness_facet);
  }
}

struct KrullDims {
  std::size_t dim_b = 0;
  std::size_t dim_a = 0;
  std::vector<std::size_t> prime_dims;
};

inline KrullDims krull_dims(const GradedPair& p) {
  auto dec = minimal_primes(p);
  KrullDims k;
  for (const auto& facet : dec.facets) {
    k.prime_dims.push_back(facet.size());
    k.dim_b = std::max(k.dim_b, facet.size());
    std::vector<bool> in_facet(p.ambient(), false);
    for (auto i : facet)
      in_facet[i] = true;
    IntMatrix rows;
    for (std::size_t i = 0; i < p.base_count(); ++i)
      if (in_facet[i]) {
        IntRow r(p.ambient(), BigInt(0));
        r[i] = 1;
        rows.push_back(std::move(r));
      }
    for (const auto& g : p.generators()) {
      bool survives = true;
      for (std::size_t i = 0; i < p.ambient(); ++i)
        if (g[i] > 0 && !in_facet[i])
          survives = false;
      if (!survives)
        continue;
      IntRow r(p.ambient());
      for (std::size_t i = 0; i < p.ambient(); ++i)
        r[i] = g[i];
      rows.push_back(std::move(r));
    }
    k.dim_a = std::max(k.dim_a, lattice_rank(rows));
  }
  return k;
}

/// Per-μ ideal of ω_s = ∩_i (m_R^s + P_i)B inside B_n.
inline MonomialIdeal omega_at(const GradedPair& p, const PrimeDecomposition& primes,
                              const ExponentVector& mu, unsigned s) {
  const auto d = p.base_count();
  auto ms = ideal_power(MonomialIdeal::maximal(d), s);
  MonomialIdeal acc = MonomialIdeal::unit(d);
  for (const auto& prime : primes.primes) {
    bool kills_mu = false;
    std::vector<std::size_t> xs;
    for (auto i : prime) {
      if (i < d)
        xs.push_back(i);
      else if (mu[i - d] > 0)
        kills_mu = true;
    }
    if (kills_mu)
      continue;
    acc = monomial_intersection(acc, ideal_sum(ms, MonomialIdeal::variables(d, xs)));
  }
  return ideal_sum(acc, p.annihilator(mu));
}

inline ComponentDecomposition omega_component(const GradedPair& p, unsigned n, unsigned s) {
  if (p.base_count() == 0)
    throw PreconditionError("omega ideals need at least one base variable");
  auto primes = minimal_primes(p);
  auto dec = component_basis(p, n);
  for (auto& c : dec.components)
    c.a_part = omega_at(p, primes, c.fiber, s);
  return dec;
}

/// Lengths ℓ(L^j_n / L^{j+1}_n), j = 0..t-1, with L^j = A_n ∩ ∩_{i≤j}(m^s + P_i)B.
struct LadderLengths {
  std::vector<std::uint64_t> steps;
  /// Same lengths counted as images in C^{j+1}/m^s C^{j+1}.
  std::vector<std::uint64_t> image_steps;
  /// ℓ(A_n / ω_s ∩ A_n), counted directly.
  std::uint64_t direct = 0;
};

inline LadderLengths prime_ladder_lengths(const GradedPair& p, unsigned n, unsigned s) {
  if (p.base_count() == 0)
    throw PreconditionError("prime ladder needs at least one base variable");
  const auto d = p.base_count();
  auto primes = minimal_primes(p);
  const auto t = primes.primes.size();
  LadderLengths out;
  out.steps.assign(t, 0);
  out.image_steps.assign(t, 0);
  if (n == 0)
    return out;
  auto ms = ideal_power(MonomialIdeal::maximal(d), s);
  auto finite = [](const QuotientCount& q) {
    if (!q.finite)
      throw InvariantFailure("prime ladder produced an infinite quotient");
    return q.count;
  };
  for (const auto& mu : fiber_monomials(p.fiber_count(), n)) {
    auto ann = p.annihilator(mu);
    if (ann.is_unit())
      continue;
    auto level = ideal_sum(p.a_component(mu), ann);
    out.direct += finite(quotient_lattice_points(level, ideal_sum(
        monomial_intersection(level, omega_at(p, primes, mu, s)), ann)));
    for (std::size_t j = 0; j < t; ++j) {
      bool kills_mu = false;
      std::vector<std::size_t> xs;
      std::vector<bool> in_prime(d, false);
      for (auto i : primes.primes[j]) {
        if (i < d) {
          xs.push_back(i);
          in_prime[i] = true;
        } else if (mu[i - d] > 0) {
          kills_mu = true;
        }
      }
      MonomialIdeal w = kills_mu ? MonomialIdeal::unit(d)
                                 : ideal_sum(ms, MonomialIdeal::variables(d, xs));
      auto next = ideal_sum(monomial_intersection(level, w), ann);
      out.steps[j] += finite(quotient_lattice_points(level, next));
      if (!kills_mu) {
        // Monomials of L^j that survive in C^{j+1} and lie below m^s there.
        out.image_steps[j] += enumerate_difference(
            level, ann,
            [&](const ExponentVector& f) {
              if (f.degree() >= s)
                return false;
              for (std::size_t i = 0; i < d; ++i)
                if (in_prime[i] && f[i] > 0)
                  return false;
              return true;
            },
            [](const ExponentVector&) {});
      }
      level = std::move(next);
    }
  }
  return out;
}

/// Smallest k ≥ 0 with ω_s ⊆ m^{s-k}B_n + ann on every live component of
/// degree ≤ n_max and every s ≤ s_max.
inline unsigned artin_rees_lag(const GradedPair& p, unsigned n_max, unsigned s_max) {
  auto primes = minimal_primes(p);
  unsigned k0 = 0;
  for (unsigned n = 0; n <= n_max; ++n)
    for (const auto& mu : fiber_monomials(p.fiber_count(), n)) {
      auto ann = p.annihilator(mu);
      if (ann.is_unit())
        continue;
      for (unsigned s = 0; s <= s_max; ++s) {
        auto w = omega_at(p, primes, mu, s);
        for (const auto& g : w.generators()) {
          if (ann.contains(g))
            continue;
          if (g.degree() < s)
            k0 = std::max<unsigned>(k0, s - static_cast<unsigned>(g.degree()));
        }
      }
    }
  return k0;
}

/// Left side of m_B^{k(e+1)} ∩ B_k at μ, read off from the generators of the
/// power of the full maximal ideal of k[x, y].
inline MonomialIdeal maximal_power_slice(const GradedPair& p, const MonomialIdeal& mb_power,
                                         const ExponentVector& mu) {
  std::vector<ExponentVector> gens;
  for (const auto& g : mb_power.generators())
    if (p.y_part(g).divides(mu))
      gens.push_back(p.x_part(g));
  return ideal_sum(minimalize(p.base_count(), std::move(gens)), p.annihilator(mu));
}

} // namespace epsmult

#endif
