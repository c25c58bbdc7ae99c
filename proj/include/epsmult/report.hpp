#ifndef EPSMULT_REPORT_HPP
#define EPSMULT_REPORT_HPP

#include "epsilon.hpp"
#include "extrapolate.hpp"
#include "graded_pair.hpp"
#include "okounkov.hpp"
#include "rational.hpp"

#include <nlohmann/json.hpp>

#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace epsmult {

inline constexpr int report_format_version = 1;
inline constexpr const char* tool_version = "1.0.0";

struct GammaCheck {
  std::vector<std::string> weights;
  unsigned alpha = 0;
  unsigned c = 0;
  Rational beta;
  unsigned max_level = 0;
  DecompositionVerdict decomposition;
  bool izumi_certified = true;
  bool closed = true;
  std::optional<OkounkovData> okounkov;
  std::optional<BoundednessWitness> bounded;
  std::vector<GammaPoint> points;
};

struct EpsilonReport {
  std::string mode;
  std::string instance_digest;
  std::vector<std::string> base_variables;
  std::vector<std::string> fiber_variables;
  KrullDims dims;
  HypothesisReport hypotheses;
  unsigned n_max = 0;
  LengthSequence sequence;
  std::vector<Rational> normalized;
  std::optional<Extrapolation> extrapolation;
  std::optional<Rational> exact_limit;
  std::optional<StabilizationReport> stabilization;
  std::optional<LengthSequence> truncated;
  std::optional<LengthSequence> truncated_saturation;
  std::optional<bool> short_exact;
  std::vector<BoundWitness> bounds;
  std::optional<Rational> newton;
  std::optional<GammaCheck> gamma;
  /// Ordered so output is deterministic.
  std::map<std::string, bool> verdicts;
  /// Non-deterministic facts (time, cache use); kept out of the body.
  nlohmann::json metadata = nlohmann::json::object();

  bool all_pass() const {
    for (const auto& [k, v] : verdicts)
      if (!v)
        return false;
    return true;
  }
};

inline nlohmann::json rational_json(const Rational& r) {
  return {{"exact", to_fraction_string(r)}, {"decimal", to_decimal_string(r)}};
}

inline std::string format_double(double x) {
  std::ostringstream ss;
  ss << std::setprecision(6) << std::scientific << x;
  return ss.str();
}

inline nlohmann::json sequence_json(const LengthSequence& s) {
  nlohmann::json j = {{"kind", to_string(s.kind)}, {"values", s.values}};
  if (s.c)
    j["c"] = *s.c;
  return j;
}

inline nlohmann::json to_json(const OkounkovData& d) {
  nlohmann::json body = nlohmann::json::array();
  for (const auto& p : d.body) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& x : p)
      v.push_back(to_fraction_string(x));
    body.push_back(v);
  }
  auto mat = [](const IntMatrix& m) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& r : m) {
      nlohmann::json row = nlohmann::json::array();
      for (const auto& x : r)
        row.push_back(x.str());
      a.push_back(row);
    }
    return a;
  };
  return {{"m", d.m.str()},
          {"q", d.q},
          {"volume", rational_json(d.volume)},
          {"index", d.index.str()},
          {"predicted_limit", rational_json(d.predicted_limit())},
          {"body_vertices", body},
          {"group_basis", mat(d.group_basis)},
          {"lattice_basis", mat(d.lattice_basis)}};
}

/// The report body. `include_metadata` adds the metadata block.
inline nlohmann::json to_json(const EpsilonReport& r, bool include_metadata = true) {
  nlohmann::json j;
  j["format_version"] = report_format_version;
  j["mode"] = r.mode;
  j["instance_digest"] = r.instance_digest;
  j["variables"] = {{"base", r.base_variables}, {"fiber", r.fiber_variables}};
  j["dims"] = {{"dim_A", r.dims.dim_a}, {"dim_B", r.dims.dim_b}, {"prime_dims", r.dims.prime_dims}};
  j["hypotheses"] = {{"holds", r.hypotheses.holds},
                     {"field_case", r.hypotheses.field_case},
                     {"witness_facet", r.hypotheses.witness_facet}};
  j["n_max"] = r.n_max;
  j["sequence"] = sequence_json(r.sequence);
  nlohmann::json norm = nlohmann::json::array();
  for (const auto& x : r.normalized)
    norm.push_back(rational_json(x));
  j["normalized"] = norm;
  if (r.extrapolation) {
    const auto& e = *r.extrapolation;
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : e.coefficients)
      coeffs.push_back(rational_json(c));
    j["extrapolation"] = {{"method", to_string(e.model)},
                          {"window", e.window},
                          {"first_n", e.first_n},
                          {"estimate", rational_json(e.estimate)},
                          {"coefficients", coeffs},
                          {"residual_rms", format_double(e.residual)},
                          {"cauchy_max_step", rational_json(e.cauchy)},
                          {"tag", "estimate"}};
  } else {
    j["extrapolation"] = nullptr;
  }
  j["exact_limit"] = r.exact_limit ? rational_json(*r.exact_limit) : nlohmann::json(nullptr);
  if (r.stabilization) {
    const auto& s = *r.stabilization;
    nlohmann::json w = nlohmann::json::array();
    for (const auto& x : s.witnesses)
      w.push_back({{"c", x.c}, {"n", x.n}, {"monomial", x.monomial}});
    j["stabilization"] = {{"c0", s.c0 ? nlohmann::json(*s.c0) : nlohmann::json(nullptr)},
                          {"c_max", s.c_max},
                          {"certified_range", s.certified_range},
                          {"containment_confirmed", s.containment_confirmed},
                          {"witnesses", w},
                          {"note", "certified for n <= certified_range only"}};
  } else {
    j["stabilization"] = nullptr;
  }
  j["truncated"] = r.truncated ? sequence_json(*r.truncated) : nlohmann::json(nullptr);
  j["truncated_saturation"] =
      r.truncated_saturation ? sequence_json(*r.truncated_saturation) : nlohmann::json(nullptr);
  j["short_exact"] = r.short_exact ? nlohmann::json(*r.short_exact) : nlohmann::json(nullptr);
  nlohmann::json b = nlohmann::json::array();
  for (const auto& w : r.bounds)
    b.push_back({{"sequence", w.label},
                 {"exponent", w.exponent},
                 {"gamma", rational_json(w.gamma)},
                 {"argmax_n", w.argmax},
                 {"range", w.range},
                 {"certified", w.certified}});
  j["bounds"] = b;
  j["newton_multiplicity"] = r.newton ? rational_json(*r.newton) : nlohmann::json(nullptr);
  if (r.gamma) {
    const auto& g = *r.gamma;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : g.decomposition.rows) {
      if (row.n == 0)
        continue;
      rows.push_back({{"n", row.n},
                      {"truncated", row.truncated},
                      {"value_quotient", row.value_quotient},
                      {"value_quotient_bar", row.value_quotient_bar},
                      {"gamma_size", row.gamma_size},
                      {"gamma_below", row.gamma_below},
                      {"gamma_bar_size", row.gamma_bar_size},
                      {"gamma_bar_below", row.gamma_bar_below}});
    }
    nlohmann::json gj = {{"weights", g.weights},
                         {"alpha", g.alpha},
                         {"c", g.c},
                         {"beta", rational_json(g.beta)},
                         {"max_level", g.max_level},
                         {"eq1", g.decomposition.eq1},
                         {"eq2", g.decomposition.eq2},
                         {"eq3", g.decomposition.eq3},
                         {"izumi_certified", g.izumi_certified},
                         {"closed", g.closed},
                         {"rows", rows}};
    gj["counterexample"] = g.decomposition.counterexample
                               ? nlohmann::json(*g.decomposition.counterexample)
                               : nlohmann::json(nullptr);
    gj["okounkov"] = g.okounkov ? to_json(*g.okounkov) : nlohmann::json(nullptr);
    if (g.bounded)
      gj["bounded"] = {{"bounded", g.bounded->bounded},
                       {"sup_ratio", rational_json(g.bounded->sup_ratio)},
                       {"q_within", g.bounded->q_within}};
    j["gamma"] = gj;
  } else {
    j["gamma"] = nullptr;
  }
  j["verdicts"] = r.verdicts;
  j["pass"] = r.all_pass();
  if (include_metadata)
    j["metadata"] = r.metadata;
  return j;
}

/// Sequence CSV: a version comment, then `n,length,normalized` where the
/// normalized cell is "p/q decimal".
inline std::string to_csv(const EpsilonReport& r) {
  std::ostringstream out;
  out << "# format_version=" << report_format_version << '\n';
  out << "n,length,normalized\n";
  for (unsigned n = 0; n < r.sequence.values.size(); ++n)
    out << n << ',' << r.sequence.values[n] << ',' << to_fraction_string(r.normalized[n]) << ' '
        << to_decimal_string(r.normalized[n]) << '\n';
  return out.str();
}

/// Aligned human-readable summary.
inline std::string to_text(const EpsilonReport& r) {
  std::ostringstream out;
  auto row = [&](const std::string& k, const std::string& v) {
    out << std::left << std::setw(28) << k << ' ' << v << '\n';
  };
  row("format_version", std::to_string(report_format_version));
  row("mode", r.mode);
  row("instance", r.instance_digest.substr(0, 16));
  row("dim A / dim B", std::to_string(r.dims.dim_a) + " / " + std::to_string(r.dims.dim_b));
  row("hypotheses", r.hypotheses.holds ? "hold" : "fail");
  row("n_max", std::to_string(r.n_max));
  if (r.exact_limit)
    row("epsilon (exact)", to_fraction_string(*r.exact_limit));
  if (r.extrapolation) {
    const auto& e = *r.extrapolation;
    row("epsilon (estimate)", to_decimal_string(e.estimate) + "  [" + to_string(e.model) +
                                  ", window " + std::to_string(e.window) + "]");
    row("  residual rms", format_double(e.residual));
    row("  cauchy max step", to_decimal_string(e.cauchy));
  }
  if (r.stabilization)
    row("c0", r.stabilization->c0 ? std::to_string(*r.stabilization->c0) + " (n <= " +
                                        std::to_string(r.stabilization->certified_range) + ")"
                                  : "not found up to c_max=" +
                                        std::to_string(r.stabilization->c_max));
  if (r.newton)
    row("newton multiplicity", to_fraction_string(*r.newton));
  for (const auto& w : r.bounds)
    row("bound " + w.label, "gamma=" + to_decimal_string(w.gamma, 6) + " p=" +
                                std::to_string(w.exponent));
  if (r.gamma && r.gamma->okounkov)
    row("okounkov vol/ind", to_fraction_string(r.gamma->okounkov->predicted_limit()));
  for (const auto& [k, v] : r.verdicts)
    row("check " + k, v ? "pass" : "FAIL");
  out << '\n';
  out << std::right << std::setw(5) << "n" << std::setw(14) << "length" << "  normalized\n";
  for (unsigned n = 0; n < r.sequence.values.size(); ++n)
    out << std::setw(5) << n << std::setw(14) << r.sequence.values[n] << "  "
        << to_decimal_string(r.normalized[n]) << '\n';
  return out.str();
}

/// Okounkov trace CSV `n,count,normalized,predicted`.
inline std::string trace_csv(const VolumeVerdict& v) {
  std::ostringstream out;
  out << "# format_version=" << report_format_version << '\n';
  out << "n,count,normalized,predicted\n";
  for (const auto& t : v.trace)
    out << t.n << ',' << t.count << ',' << to_decimal_string(t.normalized) << ','
        << to_decimal_string(t.predicted) << '\n';
  return out.str();
}

/// Γ point CSV: one row `n_1,...,n_D,n` per point.
inline std::string gamma_csv(const std::vector<GammaPoint>& pts, const VariableSet& vars) {
  std::ostringstream out;
  out << "# format_version=" << report_format_version << '\n';
  for (const auto& name : vars.names())
    out << name << ',';
  out << "n\n";
  for (const auto& p : pts) {
    for (auto x : p.exponent)
      out << x << ',';
    out << p.level << '\n';
  }
  return out.str();
}

} // namespace epsmult

#endif
