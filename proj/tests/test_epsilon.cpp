#include "oracles.hpp"
#include "random_instances.hpp"

#include <epsmult/epsmult.hpp>

#include <gtest/gtest.h>

using namespace epsmult;

namespace {

GradedPair make(std::vector<std::string> base, std::vector<std::string> fiber,
                std::vector<std::string> delta, std::vector<std::string> gens) {
  return build_pair({std::move(base), std::move(fiber), std::move(delta), std::move(gens)});
}

GradedPair x2_xy() { return make({"x", "y"}, {"t"}, {}, {"x^2*t", "x*y*t"}); }

MonomialIdeal ideal_of(std::initializer_list<const char*> gens) {
  VariableSet v(std::vector<std::string>{"x", "y"});
  std::vector<ExponentVector> g;
  for (auto m : gens)
    g.push_back(parse_monomial(m, v));
  return minimalize(2, std::move(g));
}

/// Monomials of A_n (nonzero in B) with x-degree < cn, from the product oracle.
std::uint64_t truncated_oracle(const GradedPair& p, oracle::PairOracle& o, unsigned c, unsigned n) {
  std::uint64_t k = 0;
  for (const auto& mu : fiber_monomials(p.fiber_count(), n))
    oracle::for_simplex(p.base_count(), c * n - 1, [&](const ExponentVector& x) {
      auto f = p.join(x, mu);
      if (!o.in_delta(f) && o.in_a(f, n))
        ++k;
    });
  return k;
}

} // namespace

TEST(EpsilonSequence, NonPrimaryBenchmark) {
  auto s = epsilon_length_sequence(x2_xy(), 12);
  for (unsigned n = 0; n <= 12; ++n)
    EXPECT_EQ(s.values[n], std::uint64_t(n) * (n + 1) / 2);
  EXPECT_EQ(s.values[4], 10u);
}

TEST(EpsilonSequence, MaximalIdealIsHilbertSamuel) {
  auto p = make({"x", "y"}, {"t"}, {}, {"x*t", "y*t"});
  auto s = epsilon_length_sequence(p, 10);
  for (unsigned n = 0; n <= 10; ++n)
    EXPECT_EQ(s.values[n], std::uint64_t(n) * (n + 1) / 2);
  EXPECT_EQ(s.values[3], 6u);
}

TEST(EpsilonSequence, WholeAlgebraGivesZero) {
  auto p = make({"x", "y"}, {"t1", "t2"}, {}, {"t1", "t2"});
  for (auto v : epsilon_length_sequence(p, 8).values)
    EXPECT_EQ(v, 0u);
}

TEST(EpsilonSequence, RefusesWhenHypothesesFail) {
  auto p = make({"x"}, {"y"}, {"x"}, {"y"});
  EXPECT_THROW(epsilon_length_sequence(p, 3), HypothesisFailure);
}

TEST(EpsilonSequence, MatchesBruteForceOnRandomPairs) {
  gen::Rng rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    auto desc = gen::pair(rng, gen::uniform(rng, 1, 2), gen::uniform(rng, 1, 2), 3, 2);
    if (trial % 2)
      desc = gen::with_delta(rng, desc, 2);
    auto p = build_pair(desc);
    oracle::PairOracle o(p);
    auto s = epsilon_length_sequence(p, 3);
    for (unsigned n = 1; n <= 3; ++n) {
      // Saturation quotient monomials have every exponent below the largest
      // generator exponent (≤ 2n here); m^s with s = d·2n + 1 kills them.
      const unsigned d = static_cast<unsigned>(p.base_count());
      EXPECT_EQ(s.values[n], o.epsilon_length(n, 2 * n, d * 2 * n + 1))
          << "trial " << trial << " n=" << n;
    }
  }
}

TEST(FieldCase, PolynomialRingOverSubring) {
  auto p = make({}, {"y1", "y2"}, {}, {"y1"});
  auto s = field_case_sequence(p, 20);
  for (unsigned n = 0; n <= 20; ++n)
    EXPECT_EQ(s.values[n], n);
  auto lim = field_case_limit(s, 2);
  ASSERT_TRUE(lim.has_value());
  EXPECT_EQ(*lim, Rational(1));
}

TEST(FieldCase, EqualAlgebrasGiveZero) {
  auto p = make({}, {"y1", "y2"}, {}, {"y1", "y2"});
  for (auto v : field_case_sequence(p, 10).values)
    EXPECT_EQ(v, 0u);
  EXPECT_EQ(*field_case_limit(field_case_sequence(p, 10), 2), Rational(0));
}

TEST(FieldCase, ThreeVariablesLimitIsExact) {
  // B = k[y1,y2,y3], A = k[y1]: ℓ_n = C(n+2,2) - 1, limit 2!/n^2 · ℓ_n → 1.
  auto p = make({}, {"y1", "y2", "y3"}, {}, {"y1"});
  auto s = field_case_sequence(p, 15);
  for (unsigned n = 1; n <= 15; ++n)
    EXPECT_EQ(s.values[n], std::uint64_t(n + 2) * (n + 1) / 2 - 1);
  EXPECT_EQ(*field_case_limit(s, 3), Rational(1));
}

TEST(FieldCase, RejectsBaseVariables) {
  EXPECT_THROW(field_case_sequence(x2_xy(), 3), PreconditionError);
}

TEST(Truncated, Examples) {
  auto m = make({"x"}, {"t"}, {}, {"x*t"});
  for (auto v : truncated_sequence(m, 1, 8).values)
    EXPECT_EQ(v, 0u);
  auto p = x2_xy();
  auto t2 = truncated_sequence(p, 2, 8);
  for (auto v : t2.values)
    EXPECT_EQ(v, 0u);
  auto t3 = truncated_sequence(p, 3, 8);
  for (unsigned n = 0; n <= 8; ++n)
    EXPECT_EQ(t3.values[n], std::uint64_t(n) * (3 * n + 1) / 2);
}

TEST(Truncated, MonotoneInCAndMatchesOracle) {
  gen::Rng rng(47);
  for (int trial = 0; trial < 15; ++trial) {
    auto desc = gen::with_delta(rng, gen::pair(rng, 2, gen::uniform(rng, 1, 2), 3, 2), 2);
    auto p = build_pair(desc);
    oracle::PairOracle o(p);
    std::vector<std::uint64_t> prev(4, 0);
    for (unsigned c = 1; c <= 4; ++c) {
      auto t = truncated_sequence(p, c, 3);
      for (unsigned n = 1; n <= 3; ++n) {
        EXPECT_GE(t.values[n], prev[n]);
        EXPECT_EQ(t.values[n], truncated_oracle(p, o, c, n));
        prev[n] = t.values[n];
      }
    }
  }
}

TEST(Stabilization, Examples) {
  auto r = stabilization_search(x2_xy(), 8, 20);
  ASSERT_TRUE(r.c0.has_value());
  EXPECT_EQ(*r.c0, 2u);
  EXPECT_TRUE(r.containment_confirmed);
  ASSERT_EQ(r.witnesses.size(), 1u);
  EXPECT_EQ(r.witnesses[0].c, 1u);
  EXPECT_EQ(r.witnesses[0].n, 1u);
  EXPECT_EQ(r.witnesses[0].monomial, "x*t");

  auto m = stabilization_search(make({"x", "y"}, {"t"}, {}, {"x*t", "y*t"}), 8, 15);
  EXPECT_EQ(m.c0, 1u);
  auto whole = stabilization_search(make({"x", "y"}, {"t"}, {}, {"t"}), 8, 10);
  EXPECT_EQ(whole.c0, 1u);
}

TEST(Stabilization, FailureCarriesWitness) {
  // (x^2, y^3): x*y^{3n-1} is a standard monomial of degree 3n, so c0 = 4.
  auto p = make({"x", "y"}, {"t"}, {}, {"x^2*t", "y^3*t"});
  auto r = stabilization_search(p, 2, 10);
  EXPECT_FALSE(r.c0.has_value());
  EXPECT_EQ(r.witnesses.size(), 2u);
  auto ok = stabilization_search(p, 8, 10);
  ASSERT_TRUE(ok.c0.has_value());
  EXPECT_EQ(*ok.c0, 4u);
}

TEST(ShortExact, TruncationsDifferByEpsilon) {
  gen::Rng rng(53);
  for (int trial = 0; trial < 15; ++trial) {
    auto desc = gen::with_delta(rng, gen::pair(rng, 2, gen::uniform(rng, 1, 2), 3, 2), 2);
    auto p = build_pair(desc);
    auto st = stabilization_search(p, 8, 5);
    ASSERT_TRUE(st.c0.has_value());
    for (unsigned c = *st.c0; c <= *st.c0 + 1; ++c) {
      auto ta = truncated_sequence(p, c, 5);
      auto ts = truncated_sequence(p, c, 5, true);
      EXPECT_TRUE(short_exact_check(ta, ts, epsilon_length_sequence(p, 5)));
    }
  }
}

TEST(Decomposition, LiteralCriterionIsVacuousButExact) {
  auto p = x2_xy();
  auto v = make_valuation({Rational(1), Rational(1)}, 3, 2);
  const unsigned c = 1;
  auto r = eq1_decomposition_check(p, c, Rational(2 * izumi_alpha(v)), v, 10);
  EXPECT_TRUE(r.eq1);
  EXPECT_TRUE(r.eq2);
  EXPECT_TRUE(r.eq3);
  EXPECT_FALSE(r.counterexample.has_value());
}

TEST(Decomposition, NontrivialSlopes) {
  auto p = x2_xy();
  auto v = make_valuation({Rational(1), Rational(1)}, 3, 2);
  for (auto [c, beta] : {std::pair{1u, Rational(4)}, std::pair{3u, Rational(4)},
                         std::pair{3u, Rational(6)}, std::pair{2u, Rational(7, 2)}}) {
    auto r = eq1_decomposition_check(p, c, beta, v, 8);
    EXPECT_TRUE(r.eq1) << "c=" << c;
    EXPECT_TRUE(r.eq2) << "c=" << c;
    EXPECT_TRUE(r.eq3) << "c=" << c;
    if (c == 3) {
      for (const auto& row : r.rows)
        if (row.n > 0) {
          EXPECT_EQ(row.truncated, std::uint64_t(row.n) * (3 * row.n + 1) / 2);
        }
    }
  }
  EXPECT_THROW(eq1_decomposition_check(p, 3, Rational(3), v, 3), PreconditionError);
}

TEST(Decomposition, WeightedValuation) {
  auto p = make({"x", "y"}, {"t"}, {}, {"x^3*t", "x*y*t", "y^2*t"});
  auto v = make_valuation({Rational(1), Rational(3, 2)}, 3, 2);
  auto r = eq1_decomposition_check(p, 2, Rational(6), v, 6);
  EXPECT_TRUE(r.eq1);
  EXPECT_TRUE(r.eq2);
  EXPECT_TRUE(r.eq3);
  std::uint64_t total = 0;
  for (const auto& row : r.rows)
    total += row.value_quotient;
  EXPECT_GT(total, 0u);
}

TEST(Newton, Examples) {
  EXPECT_EQ(newton_multiplicity(ideal_of({"x", "y"})), Rational(1));
  EXPECT_EQ(newton_multiplicity(ideal_of({"x^2", "y^3"})), Rational(6));
  EXPECT_EQ(newton_multiplicity(ideal_of({"x^3", "x*y", "y^2"})), Rational(5));
  EXPECT_THROW(newton_multiplicity(ideal_of({"x^2", "x*y"})), PreconditionError);
}

TEST(Newton, AgreesWithColengthGrowth) {
  // ℓ(R/I^n) = e/2 n^2 + O(n); the second difference of the colength
  // sequence is eventually e for monomial ideals in two variables.
  for (auto I : {ideal_of({"x", "y"}), ideal_of({"x^2", "y^3"}), ideal_of({"x^3", "x*y", "y^2"}),
                 ideal_of({"x^4", "x*y^2", "y^3"})}) {
    auto e = newton_multiplicity(I);
    std::vector<std::uint64_t> len;
    for (unsigned n = 8; n <= 10; ++n) {
      auto In = ideal_power(I, n);
      len.push_back(oracle::colength(In.generators(), 2, 4 * n + 1));
    }
    EXPECT_EQ(Rational(std::int64_t(len[2] - 2 * len[1] + len[0])), e);
  }
}

TEST(Newton, ThreeVariables) {
  VariableSet v(std::vector<std::string>{"x", "y", "z"});
  auto I = minimalize(3, {parse_monomial("x^2", v), parse_monomial("y^2", v),
                          parse_monomial("z^2", v)});
  EXPECT_EQ(newton_multiplicity(I), Rational(8));
}

TEST(Bounds, BenchmarkConstants) {
  auto p = x2_xy();
  auto eps = epsilon_length_sequence(p, 20);
  auto w = bound_checks(krull_dims(p), eps, truncated_sequence(p, 2, 20));
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(w[1].gamma, Rational(1));
  EXPECT_EQ(w[1].exponent, 2u);
  EXPECT_TRUE(w[0].certified);
  EXPECT_TRUE(w[1].certified);
}

TEST(Bounds, FieldCase) {
  auto p = make({}, {"y1", "y2"}, {}, {"y1"});
  auto s = field_case_sequence(p, 20);
  auto w = bound_checks(krull_dims(p), s, std::nullopt);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].gamma, Rational(1));
}

TEST(Bounds, GrowthViolationIsDetected) {
  std::vector<Rational> flat{0, 1, 1, 1, 1, 1, 1};
  EXPECT_FALSE(growth_violation(flat));
  std::vector<Rational> growing{0, 1, 2, 3, 4, 5, 6, 7, 8};
  EXPECT_EQ(growth_violation(growing), 8u);
  KrullDims bad{2, 3, {}};
  LengthSequence s{SequenceKind::saturation_quotient, {0, 1}, std::nullopt};
  EXPECT_THROW(bound_checks(bad, s, std::nullopt), InvariantFailure);
  // ℓ_n = n^3 against exponent 1 must fail.
  KrullDims dims{2, 2, {}};
  LengthSequence cubic{SequenceKind::saturation_quotient, {}, std::nullopt};
  for (unsigned n = 0; n <= 12; ++n)
    cubic.values.push_back(std::uint64_t(n) * n * n);
  EXPECT_THROW(bound_checks(dims, cubic, std::nullopt), InvariantFailure);
}
