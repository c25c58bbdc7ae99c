#ifndef EPSMULT_RUNNER_HPP
#define EPSMULT_RUNNER_HPP

#include "cache.hpp"
#include "epsilon.hpp"
#include "error.hpp"
#include "extrapolate.hpp"
#include "graded_pair.hpp"
#include "instance.hpp"
#include "okounkov.hpp"
#include "report.hpp"
#include "valuation.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace epsmult {

enum class RunMode { ideal, module, pair, field };

inline std::string to_string(RunMode m) {
  switch (m) {
  case RunMode::ideal:
    return "ideal";
  case RunMode::module:
    return "module";
  case RunMode::pair:
    return "pair";
  case RunMode::field:
    return "field";
  }
  return "unknown";
}

inline unsigned default_n_max(RunMode m) {
  return m == RunMode::module || m == RunMode::pair ? 25 : 40;
}

struct RunOptions {
  std::optional<unsigned> n_max;
  std::optional<unsigned> c;
  unsigned c_max = 8;
  std::optional<std::vector<Rational>> weights;
  std::optional<Rational> beta;
  bool check_gamma = false;
  unsigned gamma_n_max = 12;
  unsigned window = 10;
  FitModel model = FitModel::linear_inverse;
  Rational tol = Rational(1, 50);
  std::optional<std::filesystem::path> cache_dir;
  SequenceCache::Warn warn;
};

namespace detail {

inline void check_mode(RunMode mode, const GradedPair& p) {
  const bool no_delta = p.delta().is_zero();
  switch (mode) {
  case RunMode::ideal:
    if (p.base_count() == 0 || p.fiber_count() != 1 || !no_delta)
      throw IngestionError("ideal mode needs base variables, one fiber variable and empty delta");
    break;
  case RunMode::module:
    if (p.base_count() == 0 || !no_delta)
      throw IngestionError("module mode needs base variables and empty delta");
    break;
  case RunMode::pair:
    if (p.base_count() == 0)
      throw IngestionError("pair mode needs base variables; use the field mode");
    break;
  case RunMode::field:
    if (p.base_count() != 0)
      throw IngestionError("field mode requires no base variables");
    break;
  }
}

inline std::string utc_timestamp() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline GammaCheck run_gamma_check(const GradedPair& p, const Instance& inst, const RunOptions& o,
                                  unsigned c, const KrullDims& dims) {
  GammaCheck g;
  std::vector<Rational> w;
  if (o.weights)
    w = *o.weights;
  else if (inst.weights)
    w = *inst.weights;
  else
    w.assign(p.ambient(), Rational(1));
  auto v = make_valuation(w, p.ambient(), p.base_count());
  for (const auto& x : v.weights())
    g.weights.push_back(to_fraction_string(x));
  g.alpha = izumi_alpha(v);
  g.c = c;
  g.beta = o.beta ? *o.beta : Rational(g.alpha * (c + 1));
  g.max_level = o.gamma_n_max;
  g.izumi_certified = !izumi_counterexample(v, 12);
  g.decomposition = eq1_decomposition_check(p, c, g.beta, v, g.max_level);
  auto gp = gamma_points(p, v, c, g.beta, g.max_level);
  g.closed = !gamma_closure_gap(gp.gamma);
  g.points = gp.gamma.points;
  if (!gp.gamma.points.empty()) {
    auto s = semigroup_from_gamma(gp.gamma);
    g.okounkov = okounkov_data(s);
    if (g.okounkov->m <= g.max_level) {
      const auto p_exp = static_cast<unsigned>(dims.dim_b == 0 ? 0 : dims.dim_b - 1);
      g.bounded = boundedness_witness(s, *g.okounkov, p_exp,
                                      g.max_level / static_cast<unsigned>(g.okounkov->m));
    }
  }
  return g;
}

} // namespace detail

/// Full pipeline for one instance.
inline EpsilonReport run(RunMode mode, const Instance& inst, const RunOptions& o) {
  const auto started = std::chrono::steady_clock::now();
  auto pair = build_pair(inst.description);
  detail::check_mode(mode, pair);

  EpsilonReport r;
  r.mode = to_string(mode);
  r.instance_digest = inst.digest();
  r.base_variables = inst.description.base_variables;
  r.fiber_variables = inst.description.fiber_variables;
  r.hypotheses = check_hypotheses(pair);
  r.verdicts["hypotheses"] = r.hypotheses.holds;
  require_hypotheses(pair);
  r.dims = krull_dims(pair);
  r.verdicts["dim_A_le_dim_B"] = r.dims.dim_a <= r.dims.dim_b;
  const unsigned N = o.n_max.value_or(default_n_max(mode));
  r.n_max = N;

  std::optional<SequenceCache> cache;
  if (o.cache_dir)
    cache.emplace(*o.cache_dir, o.warn);
  const SequenceCache* cp = cache ? &*cache : nullptr;
  CacheStats stats;
  const auto digest = r.instance_digest;

  if (mode == RunMode::field) {
    r.sequence.kind = SequenceKind::field_case;
    r.sequence.values = cached_sequence(
        cp, cache_key(digest, "field", ""), "field", N,
        [&](unsigned n) { return n == 0 ? std::uint64_t{0} : field_case_term(pair, n); },
        &stats);
    r.exact_limit = field_case_limit(r.sequence, r.dims.dim_b);
  } else {
    r.sequence.kind = SequenceKind::saturation_quotient;
    r.sequence.values = cached_sequence(
        cp, cache_key(digest, "epsilon", ""), "epsilon", N,
        [&](unsigned n) { return saturation_slice(pair, n).length; }, &stats);
  }
  r.normalized = normalized_sequence(r.sequence, r.dims.dim_b);
  if (r.normalized.size() >= std::size_t(o.window) + 2)
    r.extrapolation = extrapolate(r.normalized, o.window, o.model);

  if (mode != RunMode::field) {
    r.stabilization = stabilization_search(pair, o.c_max, N);
    r.verdicts["stabilization_found"] = r.stabilization->c0.has_value();
    const unsigned c = o.c.value_or(r.stabilization->c0.value_or(o.c_max));
    auto trunc_term = [&](bool sat) {
      return [&pair, c, sat](unsigned n) {
        if (n == 0)
          return std::uint64_t{0};
        std::uint64_t total = 0;
        auto dec = sat ? saturated_component(pair, n) : component_basis(pair, n);
        for (const auto& comp : dec.components)
          if (comp.live())
            total += count_below_degree(ideal_sum(comp.a_part, comp.annihilator), comp.annihilator,
                                        std::uint64_t(c) * n);
        return total;
      };
    };
    const std::string cs = "c=" + std::to_string(c);
    LengthSequence ta{SequenceKind::truncated, {}, c};
    ta.values = cached_sequence(cp, cache_key(digest, "truncated", cs), "truncated", N,
                                trunc_term(false), &stats);
    LengthSequence ts{SequenceKind::truncated_saturation, {}, c};
    ts.values = cached_sequence(cp, cache_key(digest, "truncated-saturation", cs),
                                "truncated-saturation", N, trunc_term(true), &stats);
    r.truncated = ta;
    r.truncated_saturation = ts;
    if (r.stabilization->c0 && c >= *r.stabilization->c0) {
      r.short_exact = short_exact_check(ta, ts, r.sequence);
      r.verdicts["short_exact"] = *r.short_exact;
    }
    r.bounds = bound_checks(r.dims, r.sequence, ta);

    if (mode == RunMode::ideal) {
      auto ideal = pair.fiber_generators(0);
      if (is_m_primary(ideal)) {
        r.newton = newton_multiplicity(ideal);
        if (r.extrapolation)
          r.verdicts["newton_agreement"] =
              abs(r.extrapolation->estimate - *r.newton) <= o.tol * *r.newton;
      }
    }
    if (o.check_gamma) {
      r.gamma = detail::run_gamma_check(pair, inst, o, c, r.dims);
      r.verdicts["eq1"] = r.gamma->decomposition.eq1;
      r.verdicts["eq2"] = r.gamma->decomposition.eq2;
      r.verdicts["eq3"] = r.gamma->decomposition.eq3;
      r.verdicts["gamma_closed"] = r.gamma->closed;
      r.verdicts["izumi"] = r.gamma->izumi_certified;
      if (r.gamma->bounded)
        r.verdicts["gamma_bounded"] = r.gamma->bounded->bounded;
    }
  } else {
    r.bounds = bound_checks(r.dims, r.sequence, std::nullopt);
  }

  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
  r.metadata = {{"timestamp", detail::utc_timestamp()},
                {"tool_version", tool_version},
                {"elapsed_seconds", elapsed.count()},
                {"cache", {{"enabled", cp != nullptr},
                           {"terms_reused", stats.reused},
                           {"terms_computed", stats.computed}}}};
  return r;
}

inline EpsilonReport run_ideal(const Instance& i, const RunOptions& o) { return run(RunMode::ideal, i, o); }
inline EpsilonReport run_module(const Instance& i, const RunOptions& o) { return run(RunMode::module, i, o); }
inline EpsilonReport run_pair(const Instance& i, const RunOptions& o) { return run(RunMode::pair, i, o); }
inline EpsilonReport run_field(const Instance& i, const RunOptions& o) { return run(RunMode::field, i, o); }

} // namespace epsmult

#endif
