#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "prccsl/error.hpp"
#include "prccsl/rng.hpp"
#include "prccsl/smc.hpp"

namespace prccsl {
namespace {

// Independent Bernoulli(p) outcomes: stream index j draws from its own Rng.
OutcomeBatch coin(double p, std::uint64_t seed) {
  return [p, seed](std::size_t first, std::size_t count) {
    std::vector<std::uint8_t> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = Rng::for_stream(seed, first + i).bernoulli(p);
    return out;
  };
}

PairBatch coin_pairs(double p1, double p2, std::uint64_t seed) {
  return [=](std::size_t first, std::size_t count) {
    std::vector<std::pair<bool, bool>> out(count);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t j = first + i;
      out[i] = {Rng::for_stream(seed, 2 * j).bernoulli(p1), Rng::for_stream(seed, 2 * j + 1).bernoulli(p2)};
    }
    return out;
  };
}

TEST(Sprt, Thresholds) {
  const SprtParams p;
  EXPECT_NEAR(p.upper_threshold(), 19.0, 1e-12);
  EXPECT_NEAR(p.lower_threshold(), 0.05 / 0.95, 1e-12);
  SprtParams bad;
  bad.theta = 0.995;
  EXPECT_THROW(bad.validate(), Error);
  bad = SprtParams{};
  bad.alpha = 0.5;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Sprt, ClearCases) {
  const Verdict sure = hypothesis_test(coin(1.0, 1), SprtParams{});
  EXPECT_EQ(sure.decision, Decision::Accept);
  EXPECT_EQ(sure.satisfied, sure.runs_used);
  // All successes: ln(L1/L0) = k ln(0.94/0.96) first drops below ln(B) at k = 140.
  const double step = std::log(0.94 / 0.96);
  const double ln_b = std::log(0.05 / 0.95);
  EXPECT_EQ(sure.runs_used, static_cast<std::size_t>(std::ceil(ln_b / step)));
  EXPECT_EQ(hypothesis_test(coin(0.5, 1), SprtParams{}).decision, Decision::Reject);
}

TEST(Sprt, CapGivesInconclusive) {
  SprtParams p;
  p.max_runs = 10;
  const Verdict v = hypothesis_test(coin(1.0, 1), p);
  EXPECT_EQ(v.decision, Decision::Inconclusive);
  EXPECT_EQ(v.runs_used, 10u);
}

TEST(Sprt, GeneratorFailureAndExhaustion) {
  const OutcomeBatch boom = [](std::size_t, std::size_t) -> std::vector<std::uint8_t> {
    throw std::runtime_error("boom");
  };
  try {
    hypothesis_test(boom, SprtParams{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GeneratorFailure);
  }
  const OutcomeBatch few = [](std::size_t first, std::size_t count) {
    std::vector<std::uint8_t> out;
    for (std::size_t j = first; j < first + count && j < 5; ++j) out.push_back(1);
    return out;
  };
  const Verdict v = hypothesis_test(few, SprtParams{});
  EXPECT_EQ(v.decision, Decision::Inconclusive);
  EXPECT_EQ(v.runs_used, 5u);
}

TEST(Sprt, BatchSizeDoesNotChangeVerdict) {
  SprtParams a, b;
  a.batch = 1;
  b.batch = 97;
  for (double p : {0.93, 0.95, 0.97}) {
    const Verdict x = hypothesis_test(coin(p, 5), a), y = hypothesis_test(coin(p, 5), b);
    EXPECT_EQ(x.decision, y.decision);
    EXPECT_EQ(x.runs_used, y.runs_used);
    EXPECT_EQ(x.satisfied, y.satisfied);
  }
}

TEST(Sprt, CalibrationClearSeparation) {
  int accepts = 0, rejects = 0;
  double slowest = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const auto t0 = std::chrono::steady_clock::now();
    accepts += hypothesis_test(coin(0.99, 1000 + rep), SprtParams{}).decision == Decision::Accept;
    rejects += hypothesis_test(coin(0.90, 5000 + rep), SprtParams{}).decision == Decision::Reject;
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  EXPECT_GE(accepts, 190);
  EXPECT_GE(rejects, 190);
  EXPECT_LT(slowest, 1.0);
}

TEST(Sprt, CalibrationAtIndifferenceEdges) {
  // True p on the edges of the indifference region: wrong decisions at most
  // alpha (resp. beta) plus 0.05 slack.
  int wrong_at_upper = 0, wrong_at_lower = 0;
  for (int rep = 0; rep < 200; ++rep) {
    wrong_at_upper += hypothesis_test(coin(0.96, 9000 + rep), SprtParams{}).decision == Decision::Reject;
    wrong_at_lower += hypothesis_test(coin(0.94, 19000 + rep), SprtParams{}).decision == Decision::Accept;
  }
  EXPECT_LE(wrong_at_upper, static_cast<int>((0.05 + 0.05) * 200));
  EXPECT_LE(wrong_at_lower, static_cast<int>((0.05 + 0.05) * 200));
}

// P(X >= m) for X ~ Bin(k, p), summed directly.
double upper_tail(std::size_t m, std::size_t k, double p) {
  double s = 0;
  for (std::size_t x = m; x <= k; ++x) {
    const double lg = std::lgamma(k + 1.0) - std::lgamma(x + 1.0) - std::lgamma(k - x + 1.0);
    s += std::exp(lg + x * std::log(p) + (k - x) * std::log1p(-p));
  }
  return s;
}

double bisect(double lo, double hi, const std::function<double(double)>& f) {
  // f increasing on [lo, hi]; returns its root.
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TEST(ClopperPearson, MatchesBinomialTailBisection) {
  for (std::size_t k : {1u, 5u, 10u, 37u, 100u, 250u}) {
    for (std::size_t m = 0; m <= k; m += (k > 20 ? k / 10 : 1)) {
      for (double conf : {0.9, 0.95, 0.99}) {
        const double a2 = (1 - conf) / 2;
        const Interval got = clopper_pearson(m, k, conf);
        const double lo = m == 0 ? 0.0 : bisect(0, 1, [&](double p) { return upper_tail(m, k, p) - a2; });
        const double hi = m == k ? 1.0 : bisect(0, 1, [&](double p) { return (1 - upper_tail(m + 1, k, p)) < a2 ? 1 : -1; });
        EXPECT_NEAR(got.lo, lo, 1e-7) << m << "/" << k << " @" << conf;
        EXPECT_NEAR(got.hi, hi, 1e-7) << m << "/" << k << " @" << conf;
      }
    }
  }
}

TEST(ClopperPearson, Examples) {
  const Interval none = clopper_pearson(0, 10, 0.95);
  EXPECT_EQ(none.lo, 0.0);
  EXPECT_GT(none.hi, 0.0);
  const Interval half = clopper_pearson(5, 10, 0.95);
  EXPECT_LT(half.lo, 0.5);
  EXPECT_GT(half.hi, 0.5);
  EXPECT_NEAR(half.lo, 1 - half.hi, 1e-12);
  EXPECT_NEAR(half.lo, 0.1870860, 1e-6);
}

TEST(ClopperPearson, Coverage) {
  const int reps = 200;
  const double alpha = 0.05;
  const double floor = (1 - alpha) * reps - 3 * std::sqrt(alpha * (1 - alpha) * reps);
  for (double p : {0.5, 0.9, 0.99}) {
    int covered = 0;
    for (int rep = 0; rep < reps; ++rep) {
      std::size_t m = 0;
      const std::size_t k = 100;
      for (std::size_t j = 0; j < k; ++j) m += Rng::for_stream(777 + rep, j).bernoulli(p);
      const Interval iv = clopper_pearson(m, k, 1 - alpha);
      covered += iv.lo <= p && p <= iv.hi;
    }
    EXPECT_GE(covered, floor) << "p=" << p;
  }
}

TEST(Estimate, ChernoffRunCount) {
  EXPECT_EQ(chernoff_runs(0.05, 0.05), 738u);
  EXPECT_EQ(chernoff_runs(0.01, 0.01), static_cast<std::size_t>(std::ceil(std::log(200.0) / (2 * 1e-4))));
}

TEST(Estimate, AllSuccessInterval) {
  const Estimate e = estimate_probability(coin(1.0, 3), 0.95, 0.05);
  EXPECT_EQ(e.k, 738u);
  EXPECT_EQ(e.m, 738u);
  EXPECT_EQ(e.point, 1.0);
  EXPECT_GE(e.interval.lo, 0.90);
  EXPECT_EQ(e.interval.hi, 1.0);
}

TEST(Estimate, PointIsExactRatio) {
  const Estimate e = estimate_probability(coin(0.3, 4), 0.95, 0.05, 333);
  EXPECT_EQ(e.k, 333u);
  EXPECT_EQ(e.point, static_cast<double>(e.m) / 333.0);
  const OutcomeBatch empty = [](std::size_t, std::size_t) { return std::vector<std::uint8_t>{}; };
  try {
    estimate_probability(empty, 0.95, 0.05);
    FAIL();
  } catch (const Error& e2) {
    EXPECT_EQ(e2.code(), ErrorCode::EmptyEnsemble);
  }
}

TEST(Compare, HypothesisProbabilities) {
  CompareParams p;
  EXPECT_NEAR(p.q0(), 1.1 / 2.1, 1e-12);
  EXPECT_NEAR(p.q1(), 0.5, 1e-12);
  p.ratio = 0.5;
  EXPECT_NEAR(p.q1(), 0.25 / 1.25, 1e-12);
}

TEST(Compare, Examples) {
  try {
    compare_probabilities(coin_pairs(1.0, 0.0, 1), CompareParams{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateDenominator);
  }
  EXPECT_EQ(compare_probabilities(coin_pairs(0.5, 0.5, 2), CompareParams{}).decision, Decision::Reject);
  const CompareVerdict v = compare_probabilities(coin_pairs(0.9, 0.3, 3), CompareParams{});
  EXPECT_EQ(v.decision, Decision::Accept);
  EXPECT_GT(v.successes2, 0u);
  EXPECT_EQ(v.successes1 - v.successes2, v.discordant_first - v.discordant_second);
}

TEST(Compare, IdenticalOutcomesNeverDecide) {
  const PairBatch same = [](std::size_t, std::size_t count) {
    return std::vector<std::pair<bool, bool>>(count, {true, true});
  };
  CompareParams p;
  p.max_pairs = 500;
  const CompareVerdict v = compare_probabilities(same, p);
  EXPECT_EQ(v.decision, Decision::Inconclusive);
  EXPECT_EQ(v.pairs_used, 500u);
}

std::vector<std::optional<double>> defined(std::initializer_list<double> xs) {
  return std::vector<std::optional<double>>(xs.begin(), xs.end());
}

TEST(Expect, ConstantAndStudentT) {
  const auto sevens = std::vector<std::optional<double>>(20, 7.0);
  const ExpectSummary c = summarize_values(sevens);
  EXPECT_EQ(c.mean, 7.0);
  EXPECT_EQ(c.half_width, 0.0);
  EXPECT_EQ(c.histogram.count.size(), 1u);
  EXPECT_EQ(c.histogram.total(), 20u);
  const ExpectSummary s = summarize_values(defined({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}));
  EXPECT_DOUBLE_EQ(s.mean, 5.5);
  // t(0.975, 9) = 2.2621571628; sample sd of 1..10 = sqrt(55/6).
  EXPECT_NEAR(s.half_width, 2.2621571628 * std::sqrt(55.0 / 6.0) / std::sqrt(10.0), 1e-8);
  EXPECT_EQ(s.min, 1.0);
  EXPECT_EQ(s.max, 10.0);
}

TEST(Expect, UndefinedRunsExcluded) {
  std::vector<std::optional<double>> v{1.0, std::nullopt, 3.0, std::nullopt};
  const ExpectSummary s = summarize_values(v);
  EXPECT_EQ(s.n, 2u);
  EXPECT_EQ(s.excluded, 2u);
  EXPECT_EQ(s.mean, 2.0);
  std::vector<std::optional<double>> one{1.0, std::nullopt};
  EXPECT_THROW(summarize_values(one), Error);
}

TEST(Histogram, SturgesBinsSumToCount) {
  std::vector<double> xs;
  for (int i = 0; i < 500; ++i) xs.push_back(Rng::for_stream(1, i).uniform(4, 8));
  const Histogram h = sturges_histogram(xs);
  EXPECT_EQ(h.count.size(), static_cast<std::size_t>(std::ceil(std::log2(500.0)) + 1));
  EXPECT_EQ(h.total(), 500u);
  EXPECT_EQ(h.csv().substr(0, 19), "bin_lo,bin_hi,count");
  for (std::size_t b = 1; b < h.lo.size(); ++b) EXPECT_DOUBLE_EQ(h.lo[b], h.hi[b - 1]);
}

}  // namespace
}  // namespace prccsl
