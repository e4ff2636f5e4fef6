#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <random>

#include "prccsl/error.hpp"
#include "prccsl/relations.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace prccsl {
namespace {

using namespace oracle;

constexpr RelationKind kKinds[] = {RelationKind::Subclock, RelationKind::Coincidence, RelationKind::Exclusion,
                                   RelationKind::Causality, RelationKind::Precedence};

TEST(Relations, ExhaustiveOracleEquivalence) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t mismatches = 0, runs = 0;
  for (Step n = 0; n < 6; ++n) {
    const std::uint32_t limit = 1u << (n + 1);
    for (std::uint32_t ma = 0; ma < limit; ++ma) {
      for (std::uint32_t mb = 0; mb < limit; ++mb) {
        const Flags f = flags_of(ma, mb, n);
        const TickList a = testing::ticks_from_mask(ma, n), b = testing::ticks_from_mask(mb, n);
        ++runs;
        for (RelationKind k : kKinds) mismatches += check_relation(k, a, b, n) != brute(k, f, n);
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(mismatches, 0u);
  EXPECT_EQ(runs, 4u + 16 + 64 + 256 + 1024 + 4096);
  EXPECT_LT(secs, 10.0);
}

TEST(Relations, SubclockExamples) {
  EXPECT_TRUE(check_subclock(TickList{1, 3}, TickList{0, 1, 2, 3}));
  EXPECT_TRUE(check_subclock(TickList{}, TickList{4}));
  EXPECT_FALSE(check_subclock(TickList{0}, TickList{1}));
}

TEST(Relations, CoincidenceExamples) {
  const TickList x{0, 2};
  EXPECT_TRUE(check_coincidence(x, x));
  EXPECT_TRUE(check_coincidence(TickList{0, 2}, TickList{0, 2}));
  EXPECT_FALSE(check_coincidence(TickList{0}, TickList{0, 1}));
}

TEST(Relations, ExclusionExamples) {
  EXPECT_TRUE(check_exclusion(TickList{0, 2}, TickList{1, 3}));
  EXPECT_TRUE(check_exclusion(TickList{}, TickList{1, 2, 3}));
  EXPECT_FALSE(check_exclusion(TickList{1}, TickList{1}));
}

TEST(Relations, CausalityExamples) {
  const TickList x{1, 4};
  EXPECT_TRUE(check_causality(x, x, 5));
  EXPECT_TRUE(check_causality(TickList{0}, TickList{1}, 3));
  EXPECT_FALSE(check_causality(TickList{1}, TickList{0}, 3));
}

TEST(Relations, PrecedenceExamples) {
  EXPECT_TRUE(check_precedence(TickList{0, 2}, TickList{1, 3}, 4));
  const TickList x{1, 2};
  EXPECT_FALSE(check_precedence(x, x, 4));
  EXPECT_TRUE(check_precedence(TickList{}, TickList{}, 4));
}

TEST(Relations, AlgebraicProperties) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 3000; ++trial) {
    const Step n = static_cast<Step>(rng() % 20);
    const TickList a = testing::random_ticks(rng, n), b = testing::random_ticks(rng, n),
                   c = testing::random_ticks(rng, n);
    ASSERT_EQ(check_coincidence(a, b), check_subclock(a, b) && check_subclock(b, a));
    if (check_precedence(a, b, n)) ASSERT_TRUE(check_causality(a, b, n));
    ASSERT_EQ(check_exclusion(a, b), check_exclusion(b, a));
    ASSERT_EQ(check_coincidence(a, b), check_coincidence(b, a));
    ASSERT_TRUE(check_coincidence(a, a));
    if (check_coincidence(a, b) && check_coincidence(b, c)) ASSERT_TRUE(check_coincidence(a, c));
  }
}

ProbRelation rel(RelationKind kind, Rational p) {
  return ProbRelation{kind, ClockExpr::named("a"), ClockExpr::named("b"), p};
}

std::vector<prccsl::Run> ensemble(int satisfying, int total) {
  std::vector<prccsl::Run> runs;
  for (int j = 0; j < total; ++j) {
    runs.push_back(j < satisfying ? testing::two_clock_run({0, 2}, {1, 3}, 4)
                                  : testing::two_clock_run({1}, {1}, 4));
  }
  return runs;
}

TEST(EvalPrccsl, ThresholdBoundaryIsInclusive) {
  const auto nine = ensemble(9, 10);
  const EnsembleVerdict v = eval_prccsl(rel(RelationKind::Exclusion, Rational(9, 10)), nine);
  EXPECT_EQ(v.m, 9u);
  EXPECT_EQ(v.k, 10u);
  EXPECT_EQ(v.ratio, Rational(9, 10));
  EXPECT_TRUE(v.holds);
  EXPECT_FALSE(eval_prccsl(rel(RelationKind::Exclusion, Rational(9, 10)), ensemble(8, 10)).holds);
  EXPECT_TRUE(eval_prccsl(rel(RelationKind::Exclusion, Rational(1, 1)), ensemble(10, 10)).holds);
}

TEST(EvalPrccsl, EmptyEnsembleAndPermutationInvariance) {
  try {
    eval_prccsl(rel(RelationKind::Exclusion, Rational(1, 2)), std::vector<prccsl::Run>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyEnsemble);
  }
  std::mt19937_64 rng(1);
  std::vector<prccsl::Run> runs;
  for (int j = 0; j < 30; ++j) {
    runs.push_back(testing::two_clock_run(testing::random_ticks(rng, 10), testing::random_ticks(rng, 10), 10));
  }
  const auto before = eval_prccsl(rel(RelationKind::Causality, Rational(1, 2)), runs);
  std::shuffle(runs.begin(), runs.end(), rng);
  const auto after = eval_prccsl(rel(RelationKind::Causality, Rational(1, 2)), runs);
  EXPECT_EQ(before.m, after.m);
  EXPECT_EQ(before.holds, after.holds);
}

TEST(Rational, ParseAndCompare) {
  EXPECT_EQ(Rational::parse("0.95"), Rational(19, 20));
  EXPECT_EQ(Rational::parse("19/20"), Rational(19, 20));
  EXPECT_EQ(Rational::parse("1"), Rational(1, 1));
  EXPECT_EQ(Rational(19, 20).to_string(), "0.95");
  EXPECT_EQ(Rational(1, 3).to_string(), "1/3");
  EXPECT_TRUE(ratio_at_least(19, 20, Rational(19, 20)));
  EXPECT_FALSE(ratio_at_least(18, 20, Rational(19, 20)));
  EXPECT_TRUE(ratio_at_least(UINT64_MAX, UINT64_MAX, Rational(1, 1)));
}

}  // namespace
}  // namespace prccsl
