#ifndef EPSMULT_MONOMIAL_IDEAL_HPP
#define EPSMULT_MONOMIAL_IDEAL_HPP

#include "error.hpp"
#include "exponent.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace epsmult {

class MonomialIdeal;
MonomialIdeal minimalize(std::size_t ambient, std::vector<ExponentVector> gens);

/// A monomial ideal of k[x_0..x_{D-1}] held by its minimal generators,
/// sorted by degree then lex. The empty generator list is the zero ideal.
class MonomialIdeal {
public:
  MonomialIdeal() = default;

  static MonomialIdeal zero(std::size_t ambient) { return MonomialIdeal(ambient, {}); }
  static MonomialIdeal unit(std::size_t ambient) {
    return MonomialIdeal(ambient, {ExponentVector(ambient)});
  }
  /// The prime generated by the listed variables.
  static MonomialIdeal variables(std::size_t ambient, std::span<const std::size_t> vars) {
    std::vector<ExponentVector> gens;
    for (auto v : vars) {
      if (v >= ambient)
        throw PreconditionError("variable index out of range");
      gens.push_back(ExponentVector::unit(ambient, v));
    }
    return minimalize(ambient, std::move(gens));
  }
  /// (x_0, ..., x_{D-1}).
  static MonomialIdeal maximal(std::size_t ambient) {
    std::vector<ExponentVector> gens;
    for (std::size_t i = 0; i < ambient; ++i)
      gens.push_back(ExponentVector::unit(ambient, i));
    return minimalize(ambient, std::move(gens));
  }

  std::size_t ambient() const noexcept { return ambient_; }
  const std::vector<ExponentVector>& generators() const noexcept { return gens_; }
  std::size_t size() const noexcept { return gens_.size(); }
  bool is_zero() const noexcept { return gens_.empty(); }
  bool is_unit() const noexcept { return gens_.size() == 1 && gens_.front().is_zero(); }

  bool contains(const ExponentVector& m) const {
    if (m.size() != ambient_)
      throw DimensionMismatch("monomial of length " + std::to_string(m.size()) +
                              " tested against ideal in " + std::to_string(ambient_) +
                              " variables");
    for (const auto& g : gens_)
      if (g.divides(m))
        return true;
    return false;
  }

  /// other ⊆ *this.
  bool contains(const MonomialIdeal& other) const {
    for (const auto& g : other.gens_)
      if (!contains(g))
        return false;
    return true;
  }

  bool operator==(const MonomialIdeal&) const = default;

private:
  friend MonomialIdeal minimalize(std::size_t, std::vector<ExponentVector>);
  MonomialIdeal(std::size_t ambient, std::vector<ExponentVector> gens)
      : ambient_(ambient), gens_(std::move(gens)) {}

  std::size_t ambient_ = 0;
  std::vector<ExponentVector> gens_;
};

/// Reduces a generating set to its divisibility antichain.
inline MonomialIdeal minimalize(std::size_t ambient, std::vector<ExponentVector> gens) {
  for (const auto& g : gens)
    if (g.size() != ambient)
      throw DimensionMismatch("generator of length " + std::to_string(g.size()) +
                              " in an ideal over " + std::to_string(ambient) + " variables");
  std::sort(gens.begin(), gens.end(), degree_lex_less);
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<ExponentVector> kept;
  kept.reserve(gens.size());
  for (auto& cand : gens) {
    const auto deg = cand.degree();
    bool redundant = false;
    // Only strictly smaller degrees can divide a distinct monomial.
    for (const auto& k : kept) {
      if (k.degree() >= deg)
        break;
      if (k.divides(cand)) {
        redundant = true;
        break;
      }
    }
    if (!redundant)
      kept.push_back(std::move(cand));
  }
  return MonomialIdeal(ambient, std::move(kept));
}

/// Overload inferring the ambient dimension from the first generator.
inline MonomialIdeal minimalize(std::vector<ExponentVector> gens) {
  if (gens.empty())
    throw PreconditionError("cannot infer ambient dimension of an empty generator set");
  auto dim = gens.front().size();
  return minimalize(dim, std::move(gens));
}

inline void require_same_ambient(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (a.ambient() != b.ambient())
    throw DimensionMismatch("ideals over " + std::to_string(a.ambient()) + " and " +
                            std::to_string(b.ambient()) + " variables");
}

inline MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_ambient(a, b);
  std::vector<ExponentVector> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return minimalize(a.ambient(), std::move(gens));
}

inline MonomialIdeal ideal_product(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_ambient(a, b);
  std::vector<ExponentVector> gens;
  gens.reserve(a.size() * b.size());
  for (const auto& g : a.generators())
    for (const auto& h : b.generators())
      gens.push_back(g + h);
  return minimalize(a.ambient(), std::move(gens));
}

/// I^n by repeated squaring; I^0 is the unit ideal.
inline MonomialIdeal ideal_power(const MonomialIdeal& ideal, unsigned n) {
  MonomialIdeal result = MonomialIdeal::unit(ideal.ambient());
  if (n == 0)
    return result;
  MonomialIdeal base = ideal;
  bool first = true;
  while (true) {
    if (n & 1u) {
      result = first ? base : ideal_product(result, base);
      first = false;
    }
    n >>= 1u;
    if (n == 0)
      break;
    base = ideal_product(base, base);
  }
  return result;
}

/// (I : x_i^∞): drop the i-th coordinate of every generator.
inline MonomialIdeal colon_saturate_variable(const MonomialIdeal& ideal, std::size_t i) {
  if (i >= ideal.ambient())
    throw PreconditionError("variable index " + std::to_string(i) + " out of range");
  std::vector<ExponentVector> gens = ideal.generators();
  for (auto& g : gens)
    g[i] = 0;
  return minimalize(ideal.ambient(), std::move(gens));
}

/// Pairwise lcms of generators.
inline MonomialIdeal monomial_intersection(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same_ambient(a, b);
  std::vector<ExponentVector> gens;
  gens.reserve(a.size() * b.size());
  for (const auto& g : a.generators())
    for (const auto& h : b.generators())
      gens.push_back(lcm(g, h));
  return minimalize(a.ambient(), std::move(gens));
}

/// (I : m^∞) for m generated by the listed variables.
inline MonomialIdeal saturate(const MonomialIdeal& ideal, std::span<const std::size_t> vars) {
  if (vars.empty())
    throw PreconditionError("saturation needs at least one variable");
  std::optional<MonomialIdeal> acc;
  for (auto v : vars) {
    auto part = colon_saturate_variable(ideal, v);
    acc = acc ? monomial_intersection(*acc, part) : part;
  }
  return *acc;
}

/// Saturation with respect to all variables.
inline MonomialIdeal saturate(const MonomialIdeal& ideal) {
  std::vector<std::size_t> all(ideal.ambient());
  for (std::size_t i = 0; i < all.size(); ++i)
    all[i] = i;
  return saturate(ideal, all);
}

/// (I : g) for a single monomial g.
inline MonomialIdeal colon_monomial(const MonomialIdeal& ideal, const ExponentVector& g) {
  std::vector<ExponentVector> gens;
  gens.reserve(ideal.size());
  for (const auto& h : ideal.generators())
    gens.push_back(monus(h, g));
  return minimalize(ideal.ambient(), std::move(gens));
}

/// (I : J) = ∩_{g ∈ gens(J)} (I : g). (I : 0) is the unit ideal.
inline MonomialIdeal colon(const MonomialIdeal& ideal, const MonomialIdeal& by) {
  require_same_ambient(ideal, by);
  std::optional<MonomialIdeal> acc;
  for (const auto& g : by.generators()) {
    auto part = colon_monomial(ideal, g);
    acc = acc ? monomial_intersection(*acc, part) : part;
  }
  return acc ? *acc : MonomialIdeal::unit(ideal.ambient());
}

struct IteratedSaturation {
  MonomialIdeal ideal;
  /// Number of colon steps that changed the ideal (the saturation exponent).
  unsigned steps = 0;
};

/// Saturation as the fixpoint of J ↦ (J : m).
inline IteratedSaturation saturate_by_iteration(const MonomialIdeal& ideal,
                                                std::span<const std::size_t> vars) {
  if (vars.empty())
    throw PreconditionError("saturation needs at least one variable");
  auto m = MonomialIdeal::variables(ideal.ambient(), vars);
  IteratedSaturation out{ideal, 0};
  while (true) {
    auto next = colon(out.ideal, m);
    if (next == out.ideal)
      return out;
    out.ideal = std::move(next);
    ++out.steps;
  }
}

/// True when every variable has a pure power in the ideal (and the ideal is
/// proper), i.e. the ideal is primary to the maximal monomial ideal.
inline bool is_m_primary(const MonomialIdeal& ideal) {
  if (ideal.is_unit() || ideal.is_zero())
    return false;
  for (std::size_t i = 0; i < ideal.ambient(); ++i) {
    bool found = false;
    for (const auto& g : ideal.generators())
      if (g.degree() == g[i] && g[i] > 0) {
        found = true;
        break;
      }
    if (!found)
      return false;
  }
  return true;
}

/// Visits every monomial of J ∖ I that satisfies `keep`. `keep` must be
/// closed under division (if keep(f) and g | f with g ∈ J then keep(g)).
/// Returns the number visited; throws BudgetExceeded past `cap`.
template <class Keep, class Visit>
std::uint64_t enumerate_difference(const MonomialIdeal& J, const MonomialIdeal& I, Keep&& keep,
                                   Visit&& visit,
                                   std::uint64_t cap = 50'000'000) {
  require_same_ambient(J, I);
  const auto dim = J.ambient();
  std::unordered_set<ExponentVector, ExponentVectorHash> seen;
  std::deque<ExponentVector> queue;
  for (const auto& g : J.generators())
    if (!I.contains(g) && keep(g) && seen.insert(g).second)
      queue.push_back(g);
  std::uint64_t count = 0;
  while (!queue.empty()) {
    ExponentVector f = std::move(queue.front());
    queue.pop_front();
    if (++count > cap)
      throw BudgetExceeded("quotient enumeration exceeded " + std::to_string(cap) +
                           " monomials");
    visit(f);
    for (std::size_t i = 0; i < dim; ++i) {
      ExponentVector next = f;
      next[i] = checked_add(next[i], 1);
      if (seen.count(next) || I.contains(next) || !keep(next))
        continue;
      seen.insert(next);
      queue.push_back(std::move(next));
    }
  }
  return count;
}

/// True when J ∖ I is finite: every ray g·x_i^k from a generator g of J
/// eventually lands in I.
inline bool quotient_is_finite(const MonomialIdeal& J, const MonomialIdeal& I) {
  require_same_ambient(J, I);
  for (const auto& g : J.generators()) {
    if (I.contains(g))
      continue;
    for (std::size_t i = 0; i < J.ambient(); ++i) {
      bool absorbed = false;
      for (const auto& h : I.generators()) {
        bool ok = true;
        for (std::size_t j = 0; j < J.ambient() && ok; ++j)
          if (j != i && h[j] > g[j])
            ok = false;
        if (ok) {
          absorbed = true;
          break;
        }
      }
      if (!absorbed)
        return false;
    }
  }
  return true;
}

struct QuotientCount {
  bool finite = true;
  std::uint64_t count = 0;
};

/// Number of monomials in J ∖ I (the length of J/I); requires I ⊆ J.
inline QuotientCount quotient_lattice_points(const MonomialIdeal& J, const MonomialIdeal& I,
                                             std::uint64_t cap = 50'000'000) {
  require_same_ambient(J, I);
  if (!J.contains(I))
    throw ContainmentError("quotient_lattice_points requires I ⊆ J");
  if (!quotient_is_finite(J, I))
    return {false, 0};
  auto n = enumerate_difference(
      J, I, [](const ExponentVector&) { return true; }, [](const ExponentVector&) {}, cap);
  return {true, n};
}

/// Number of monomials of J ∖ I of total degree < bound (always finite).
inline std::uint64_t count_below_degree(const MonomialIdeal& J, const MonomialIdeal& I,
                                        std::uint64_t bound) {
  return enumerate_difference(
      J, I, [bound](const ExponentVector& f) { return f.degree() < bound; },
      [](const ExponentVector&) {});
}

inline std::string format_ideal(const MonomialIdeal& ideal, const VariableSet& vars) {
  if (ideal.is_zero())
    return "(0)";
  std::string out = "(";
  for (std::size_t i = 0; i < ideal.size(); ++i) {
    if (i)
      out += ", ";
    out += format_monomial(ideal.generators()[i], vars);
  }
  return out + ")";
}

} // namespace epsmult

#endif
