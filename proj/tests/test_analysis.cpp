#include <epsmult/epsmult.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace epsmult;
namespace fs = std::filesystem;

namespace {

fs::path source_dir() { return fs::path(EPSMULT_SOURCE_DIR); }
fs::path instance(const std::string& name) { return source_dir() / "instances" / name; }

/// Fresh scratch directory under the system temp dir, removed on destruction.
struct ScratchDir {
  fs::path path;
  explicit ScratchDir(const std::string& name)
      : path(fs::temp_directory_path() / ("epsmult-test-" + name + "-" +
                                          std::to_string(::testing::UnitTest::GetInstance()->random_seed()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

RunOptions quiet() {
  RunOptions o;
  o.warn = [](const std::string&) {};
  return o;
}

} // namespace

TEST(Extrapolate, ExactModelIsRecovered) {
  std::vector<Rational> v{0};
  for (unsigned n = 1; n <= 30; ++n)
    v.push_back(Rational(3) + Rational(5, n));
  auto e = extrapolate(v, 10);
  EXPECT_EQ(e.estimate, Rational(3));
  EXPECT_EQ(e.coefficients[1], Rational(5));
  EXPECT_EQ(e.residual, 0.0);
  EXPECT_EQ(e.first_n, 21u);
  std::vector<Rational> w{0};
  for (unsigned n = 1; n <= 30; ++n)
    w.push_back(Rational(2) - Rational(1, n) + Rational(7, n * n));
  EXPECT_EQ(extrapolate(w, 10, FitModel::quadratic_inverse).estimate, Rational(2));
  EXPECT_NE(extrapolate(w, 10).estimate, Rational(2));
}

TEST(Extrapolate, Preconditions) {
  std::vector<Rational> v(5, Rational(1));
  EXPECT_THROW(extrapolate(v, 10), PreconditionError);
  EXPECT_THROW(extrapolate(v, 1), PreconditionError);
}

TEST(TomlLite, ParsesSubset) {
  auto j = TomlLite::parse(R"(# comment
name = "a # not a comment"
n = -4
gens = [
  [0, 1],  # trailing
  [1, 1],
]
empty = []
)");
  EXPECT_EQ(j["name"], "a # not a comment");
  EXPECT_EQ(j["n"], -4);
  EXPECT_EQ(j["gens"], nlohmann::json::parse("[[0,1],[1,1]]"));
  EXPECT_TRUE(j["empty"].is_array());
}

TEST(TomlLite, RejectsUnsupported) {
  EXPECT_THROW(TomlLite::parse("[table]\nx = 1\n"), IngestionError);
  EXPECT_THROW(TomlLite::parse("x = 1.5\n"), IngestionError);
  EXPECT_THROW(TomlLite::parse("x = 1\nx = 2\n"), IngestionError);
  EXPECT_THROW(TomlLite::parse("x = [1, 2\n"), IngestionError);
  EXPECT_THROW(TomlLite::parse("x = \"open\n"), IngestionError);
}

TEST(Instance, JsonAndTomlAgree) {
  auto a = load_instance(instance("ideal_x2_xy.json"));
  auto b = load_instance(instance("ideal_x2_xy.toml"));
  EXPECT_EQ(a.canonical, b.canonical);
  EXPECT_EQ(a.digest(), b.digest());
  ASSERT_TRUE(a.weights.has_value());
  EXPECT_EQ(a.weights->size(), 2u);
}

TEST(Instance, IngestionErrors) {
  EXPECT_THROW(load_instance(instance("malformed_unknown_field.json")), IngestionError);
  EXPECT_THROW(load_instance(instance("does_not_exist.json")), IngestionError);
  EXPECT_THROW(instance_from_json(nlohmann::json::parse(R"({"base_variables": ["x"]})")),
               IngestionError);
  EXPECT_THROW(instance_from_json(nlohmann::json::parse(
                   R"({"base_variables": ["x"], "fiber_variables": ["t"],
                       "subalgebra_generators": ["x*t"], "weights": ["a/b"]})")),
               IngestionError);
  EXPECT_THROW(semigroup_from_json(nlohmann::json::parse("[[0, 1], [1]]")), IngestionError);
  EXPECT_THROW(semigroup_from_json(nlohmann::json::parse("[[0, -1]]")), IngestionError);
}

TEST(Instance, EveryShippedFileLoads) {
  for (const auto& e : fs::directory_iterator(source_dir() / "instances")) {
    if (e.path().filename().string().rfind("malformed", 0) == 0)
      continue;
    EXPECT_NO_THROW(load_instance(e.path())) << e.path();
  }
  for (const auto& e : fs::directory_iterator(source_dir() / "semigroups"))
    EXPECT_NO_THROW(okounkov_data(load_semigroup(e.path()))) << e.path();
}

TEST(Cache, RoundTripAndPrefixReuse) {
  ScratchDir dir("cache");
  SequenceCache cache(dir.path);
  auto key = cache_key("digest", "epsilon", "");
  unsigned calls = 0;
  auto term = [&](unsigned n) {
    ++calls;
    return std::uint64_t(n) * n;
  };
  CacheStats s1;
  auto a = cached_sequence(&cache, key, "epsilon", 10, term, &s1);
  EXPECT_EQ(calls, 11u);
  EXPECT_EQ(s1.computed, 11u);
  CacheStats s2;
  auto b = cached_sequence(&cache, key, "epsilon", 15, term, &s2);
  EXPECT_EQ(calls, 16u);
  EXPECT_EQ(s2.reused, 11u);
  EXPECT_EQ(s2.computed, 5u);
  CacheStats s3;
  auto c = cached_sequence(&cache, key, "epsilon", 7, term, &s3);
  EXPECT_EQ(calls, 16u);
  EXPECT_EQ(c, std::vector<std::uint64_t>(b.begin(), b.begin() + 8));
  EXPECT_EQ(std::vector<std::uint64_t>(b.begin(), b.begin() + 11), a);
}

TEST(Cache, CorruptEntryIsDiscarded) {
  ScratchDir dir("corrupt");
  std::vector<std::string> warnings;
  SequenceCache cache(dir.path, [&](const std::string& w) { warnings.push_back(w); });
  auto key = cache_key("digest", "epsilon", "");
  cache.store(key, "epsilon", {0, 1, 2});
  {
    std::ofstream out(cache.entry_path(key), std::ios::trunc);
    out << R"({"format_version": 1, "key": ")" << key
        << R"(", "operation": "epsilon", "values": [0, 1, 3], "checksum": "bad"})";
  }
  EXPECT_FALSE(cache.load(key).has_value());
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_FALSE(fs::exists(cache.entry_path(key)));
  {
    std::ofstream out(cache.entry_path(key), std::ios::trunc);
    out << "{ not json";
  }
  EXPECT_FALSE(cache.load(key).has_value());
  EXPECT_EQ(warnings.size(), 2u);
}

TEST(Cache, KeysSeparateOperationsAndParameters) {
  EXPECT_NE(cache_key("d", "truncated", "c=1"), cache_key("d", "truncated", "c=2"));
  EXPECT_NE(cache_key("d", "epsilon", ""), cache_key("d", "field", ""));
  EXPECT_EQ(cache_key("d", "epsilon", ""), cache_key("d", "epsilon", ""));
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Runner, IdealBenchmarkReport) {
  auto o = quiet();
  o.n_max = 20;
  auto r = run(RunMode::ideal, load_instance(instance("ideal_x2_xy.json")), o);
  EXPECT_EQ(r.sequence.values[20], 210u);
  ASSERT_TRUE(r.stabilization && r.stabilization->c0);
  EXPECT_EQ(*r.stabilization->c0, 2u);
  EXPECT_TRUE(r.all_pass());
  EXPECT_FALSE(r.newton.has_value());
  auto j = to_json(r, false);
  EXPECT_EQ(j["format_version"], report_format_version);
  EXPECT_FALSE(j.contains("metadata"));
  EXPECT_TRUE(to_json(r, true).contains("metadata"));
}

TEST(Runner, ModeChecks) {
  auto o = quiet();
  o.n_max = 4;
  EXPECT_THROW(run(RunMode::field, load_instance(instance("ideal_x2_xy.json")), o),
               IngestionError);
  EXPECT_THROW(run(RunMode::ideal, load_instance(instance("module_two_fibers.json")), o),
               IngestionError);
  EXPECT_THROW(run(RunMode::module, load_instance(instance("pair_y1y2.json")), o),
               IngestionError);
  EXPECT_THROW(run(RunMode::pair, load_instance(instance("refused_hypothesis.json")), o),
               HypothesisFailure);
}

TEST(Runner, GammaCheckOnBenchmark) {
  auto o = quiet();
  o.n_max = 12;
  o.check_gamma = true;
  o.gamma_n_max = 8;
  auto r = run(RunMode::ideal, load_instance(instance("ideal_x2_xy.json")), o);
  ASSERT_TRUE(r.gamma.has_value());
  EXPECT_EQ(r.gamma->alpha, 1u);
  EXPECT_EQ(r.gamma->beta, Rational(3));
  EXPECT_TRUE(r.verdicts.at("eq1"));
  EXPECT_TRUE(r.verdicts.at("eq2"));
  EXPECT_TRUE(r.verdicts.at("eq3"));
  EXPECT_TRUE(r.verdicts.at("gamma_closed"));
  EXPECT_TRUE(r.verdicts.at("izumi"));
  auto pair = build_pair(load_instance(instance("ideal_x2_xy.json")).description);
  auto csv = gamma_csv(r.gamma->points, pair.variables());
  EXPECT_EQ(csv.rfind("# format_version=1\nx,y,t,n\n", 0), 0u);
}

TEST(Report, DeterministicWithoutMetadata) {
  auto o = quiet();
  o.n_max = 15;
  auto inst = load_instance(instance("module_two_fibers.json"));
  auto a = run(RunMode::module, inst, o);
  auto b = run(RunMode::module, inst, o);
  EXPECT_EQ(to_json(a, false).dump(2), to_json(b, false).dump(2));
  EXPECT_EQ(to_csv(a), to_csv(b));
  EXPECT_EQ(to_text(a), to_text(b));
}

TEST(Report, CsvLayout) {
  auto o = quiet();
  o.n_max = 3;
  auto r = run(RunMode::field, load_instance(instance("field_y1.json")), o);
  EXPECT_EQ(to_csv(r), "# format_version=1\n"
                       "n,length,normalized\n"
                       "0,0,0/1 0.000000000000\n"
                       "1,1,1/1 1.000000000000\n"
                       "2,2,1/1 1.000000000000\n"
                       "3,3,1/1 1.000000000000\n");
}

TEST(Report, CachedRunEqualsFreshRun) {
  ScratchDir dir("runner");
  auto o = quiet();
  o.n_max = 12;
  auto inst = load_instance(instance("pair_two_primes.json"));
  auto fresh = run(RunMode::pair, inst, o);
  o.cache_dir = dir.path;
  auto first = run(RunMode::pair, inst, o);
  auto second = run(RunMode::pair, inst, o);
  EXPECT_EQ(second.metadata["cache"]["terms_computed"], 0);
  EXPECT_EQ(to_json(fresh, false), to_json(first, false));
  EXPECT_EQ(to_json(fresh, false), to_json(second, false));
}
