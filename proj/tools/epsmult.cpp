// Command-line front end: ε sequences for graded pairs, semigroup analysis
// and Okounkov limit verification.

#include <epsmult/epsmult.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace epsmult;

enum Exit : int {
  exit_ok = 0,
  exit_hypothesis = 2,
  exit_budget = 3,
  exit_ingestion = 4,
  exit_invariant = 5,
};

int exit_code_for(const Error& e) {
  switch (e.code()) {
  case ErrorCode::hypothesis:
    return exit_hypothesis;
  case ErrorCode::budget:
  case ErrorCode::overflow:
    return exit_budget;
  case ErrorCode::ingestion:
  case ErrorCode::precondition:
  case ErrorCode::dimension_mismatch:
    return exit_ingestion;
  case ErrorCode::containment:
  case ErrorCode::invariant:
    return exit_invariant;
  }
  return exit_invariant;
}

std::vector<Rational> parse_weight_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(parse_rational(item));
  if (out.empty())
    throw IngestionError("empty --weights list");
  return out;
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IngestionError("cannot write '" + output + "'");
  out << text;
}

struct Common {
  unsigned n_max = 0;
  unsigned c = 0;
  unsigned c_max = 8;
  std::string weights;
  std::string beta;
  std::string format = "text";
  std::string cache_dir;
  bool check_gamma = false;
  std::string tol = "1/50";
  unsigned gamma_n_max = 12;
  unsigned window = 10;
  bool quadratic = false;
  std::string output;
  std::string gamma_csv;
  bool no_metadata = false;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--n-max", c.n_max, "largest degree n");
  app->add_option("--c", c.c, "truncation slope c (default: c0)");
  app->add_option("--c-max", c.c_max, "largest c tried by the stabilization search");
  app->add_option("--weights", c.weights, "valuation weights, comma separated p/q");
  app->add_option("--beta", c.beta, "filtration slope beta (default alpha*(c+1))");
  app->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app->add_option("--cache-dir", c.cache_dir, "directory for cached sequences");
  app->add_flag("--check-gamma", c.check_gamma, "run the valuation and semigroup cross-checks");
  app->add_option("--tol", c.tol, "relative tolerance (p/q or integer)");
  app->add_option("--gamma-n-max", c.gamma_n_max, "largest level for the semigroup checks");
  app->add_option("--window", c.window, "extrapolation window");
  app->add_flag("--quadratic", c.quadratic, "fit a+b/n+c/n^2 instead of a+b/n");
  app->add_option("--output,-o", c.output, "write to this file instead of stdout");
  app->add_option("--gamma-csv", c.gamma_csv, "export the gamma points as CSV");
  app->add_flag("--no-metadata", c.no_metadata, "omit the metadata block from JSON output");
}

Rational parse_tol(const std::string& s) {
  if (s.find('.') != std::string::npos) {
    // Decimal tolerance, e.g. 0.02.
    auto dot = s.find('.');
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    return Rational(parse_rational(digits)) /
           Rational(int_pow(BigInt(10), static_cast<unsigned>(s.size() - dot - 1)));
  }
  return parse_rational(s);
}

/// Exact verdicts whose failure means a defect, not a property of the input.
bool exact_checks_pass(const EpsilonReport& r) {
  for (const char* k : {"short_exact", "eq1", "eq2", "eq3", "gamma_closed", "izumi",
                        "dim_A_le_dim_B"}) {
    auto it = r.verdicts.find(k);
    if (it != r.verdicts.end() && !it->second)
      return false;
  }
  return true;
}

int run_epsilon(RunMode mode, const std::string& file, const Common& c) {
  auto inst = load_instance(file);
  RunOptions o;
  if (c.n_max)
    o.n_max = c.n_max;
  if (c.c)
    o.c = c.c;
  o.c_max = c.c_max;
  if (!c.weights.empty())
    o.weights = parse_weight_list(c.weights);
  if (!c.beta.empty())
    o.beta = parse_rational(c.beta);
  o.check_gamma = c.check_gamma;
  o.gamma_n_max = c.gamma_n_max;
  o.window = c.window;
  o.model = c.quadratic ? FitModel::quadratic_inverse : FitModel::linear_inverse;
  o.tol = parse_tol(c.tol);
  if (!c.cache_dir.empty())
    o.cache_dir = c.cache_dir;
  o.warn = [](const std::string& w) { std::cerr << "warning: " << w << '\n'; };
  auto report = run(mode, inst, o);
  if (c.format == "json")
    emit(to_json(report, !c.no_metadata).dump(2) + "\n", c.output);
  else if (c.format == "csv")
    emit(to_csv(report), c.output);
  else
    emit(to_text(report), c.output);
  if (!c.gamma_csv.empty()) {
    if (!report.gamma)
      throw IngestionError("--gamma-csv needs --check-gamma");
    auto pair = build_pair(inst.description);
    emit(gamma_csv(report.gamma->points, pair.variables()), c.gamma_csv);
  }
  return exact_checks_pass(report) ? exit_ok : exit_invariant;
}

int run_semigroup_analyze(const std::string& file, const Common& c) {
  auto s = load_semigroup(file);
  auto data = okounkov_data(s);
  const unsigned N = c.n_max ? c.n_max : 50;
  auto counts = level_counts(s, N);
  nlohmann::json j = {{"format_version", report_format_version},
                      {"okounkov", to_json(data)},
                      {"level_counts", counts},
                      {"superadditive", superadditive_on_range(s, std::min(N, 30u))}};
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : s.generators)
    gens.push_back(g);
  j["generators"] = gens;
  if (c.format == "json") {
    emit(j.dump(2) + "\n", c.output);
  } else {
    std::ostringstream out;
    auto row = [&](const std::string& k, const std::string& v) {
      out << std::left << std::setw(20) << k << v << '\n';
    };
    row("format_version", std::to_string(report_format_version));
    row("m(S)", data.m.str());
    row("q(S)", std::to_string(data.q));
    row("vol", to_fraction_string(data.volume));
    row("ind(S)", data.index.str());
    row("vol/ind", to_fraction_string(data.predicted_limit()));
    std::string lc;
    for (unsigned n = 0; n <= std::min(N, 10u); ++n)
      lc += (n ? " " : "") + std::to_string(counts[n]);
    row("#S_0..#S_10", lc);
    emit(out.str(), c.output);
  }
  return exit_ok;
}

int run_okounkov_verify(const std::string& file, const Common& c) {
  auto s = load_semigroup(file);
  auto data = okounkov_data(s);
  const unsigned N = c.n_max ? c.n_max : 200;
  auto v = verify_volume_limit(s, data, N, parse_tol(c.tol));
  if (c.format == "csv") {
    emit(trace_csv(v), c.output);
  } else if (c.format == "json") {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& t : v.trace)
      trace.push_back({{"n", t.n},
                       {"count", t.count},
                       {"normalized", rational_json(t.normalized)}});
    nlohmann::json j = {{"format_version", report_format_version},
                        {"okounkov", to_json(data)},
                        {"n_max", N},
                        {"tol", rational_json(parse_tol(c.tol))},
                        {"relative_error", rational_json(v.relative_error)},
                        {"pass", v.pass},
                        {"trace", trace}};
    emit(j.dump(2) + "\n", c.output);
  } else {
    std::ostringstream out;
    out << std::left << std::setw(20) << "format_version" << report_format_version << '\n'
        << std::setw(20) << "predicted" << to_decimal_string(data.predicted_limit()) << '\n'
        << std::setw(20) << "observed" << to_decimal_string(v.trace.back().normalized) << '\n'
        << std::setw(20) << "relative error" << to_decimal_string(v.relative_error) << '\n'
        << std::setw(20) << "verdict" << (v.pass ? "pass" : "FAIL") << '\n';
    emit(out.str(), c.output);
  }
  return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact epsilon-multiplicity sequences for monomial graded pairs"};
  app.require_subcommand(1);
  Common common;
  std::string file;

  auto* eps = app.add_subcommand("epsilon", "epsilon-multiplicity sequence of an instance");
  eps->require_subcommand(1);
  std::vector<std::pair<CLI::App*, RunMode>> modes;
  for (auto [name, mode] : {std::pair{"ideal", RunMode::ideal}, std::pair{"module", RunMode::module},
                            std::pair{"pair", RunMode::pair}, std::pair{"field", RunMode::field}}) {
    auto* sub = eps->add_subcommand(name, std::string(name) + " case");
    sub->add_option("instance", file, "instance file (.json or .toml)")->required();
    add_common(sub, common);
    modes.emplace_back(sub, mode);
  }
  auto* sg = app.add_subcommand("semigroup", "affine semigroup tools");
  sg->require_subcommand(1);
  auto* analyze = sg->add_subcommand("analyze", "group, cone, body, volume and index");
  analyze->add_option("file", file, "semigroup file")->required();
  add_common(analyze, common);
  auto* ok = app.add_subcommand("okounkov", "limit theorem checks");
  ok->require_subcommand(1);
  auto* verify = ok->add_subcommand("verify", "compare #S_mn/n^q with vol/ind");
  verify->add_option("file", file, "semigroup file")->required();
  add_common(verify, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_ingestion;
  }

  try {
    for (auto [sub, mode] : modes)
      if (sub->parsed())
        return run_epsilon(mode, file, common);
    if (analyze->parsed())
      return run_semigroup_analyze(file, common);
    if (verify->parsed())
      return run_okounkov_verify(file, common);
  } catch (const HypothesisFailure& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return exit_hypothesis;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return exit_invariant;
  }
  return exit_invariant;
}
