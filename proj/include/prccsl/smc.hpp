#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prccsl {

// Bernoulli outcomes of stream indices [first, first + count). Batches may be
// computed in parallel; a shorter result means the source is exhausted.
using OutcomeBatch = std::function<std::vector<std::uint8_t>(std::size_t first, std::size_t count)>;
// Outcome pairs (phi1 on run 2j, phi2 on run 2j+1) for pair indices [first, first + count).
using PairBatch = std::function<std::vector<std::pair<bool, bool>>(std::size_t first, std::size_t count)>;

enum class Decision { Accept, Reject, Inconclusive };
std::string_view decision_name(Decision d) noexcept;

struct SprtParams {
  double theta = 0.95;
  double alpha = 0.05;
  double beta = 0.05;
  double delta = 0.01;
  std::size_t max_runs = 10000;
  std::size_t batch = 64;

  // Throws BadParameter unless 0 < theta-delta < theta+delta < 1 and 0 < alpha, beta < 0.5.
  void validate() const;
  double upper_threshold() const { return (1 - beta) / alpha; }  // A
  double lower_threshold() const { return beta / (1 - alpha); }  // B
};

struct Verdict {
  Decision decision = Decision::Inconclusive;
  std::size_t runs_used = 0;
  std::size_t satisfied = 0;
  double log_ratio = 0;  // ln(L1 / L0) when the test stopped
};

// Wald SPRT of H0: p >= theta+delta against H1: p <= theta-delta, consuming
// outcomes in index order. Generator exceptions become GeneratorFailure.
Verdict hypothesis_test(const OutcomeBatch& gen, const SprtParams& params);

struct Interval {
  double lo = 0;
  double hi = 1;
};

// Exact two-sided Clopper-Pearson interval for m successes out of k.
Interval clopper_pearson(std::size_t m, std::size_t k, double confidence);

// Smallest k with k >= ln(2/alpha) / (2 eps^2) (Chernoff-Hoeffding).
std::size_t chernoff_runs(double alpha, double epsilon);

struct Estimate {
  std::size_t m = 0;
  std::size_t k = 0;
  double point = 0;  // m / k
  Interval interval;
  double confidence = 0.95;
  double epsilon = 0.05;
  std::size_t requested = 0;  // runs asked for; k is smaller only when the source ran out
};

// Draws `runs` outcomes (default chernoff_runs(1 - confidence, epsilon)).
Estimate estimate_probability(const OutcomeBatch& gen, double confidence, double epsilon,
                              std::optional<std::size_t> runs = std::nullopt, std::size_t batch = 64);

struct CompareParams {
  double ratio = 1.1;
  double alpha = 0.05;
  double beta = 0.05;
  std::size_t max_pairs = 50000;
  std::size_t batch = 64;

  void validate() const;
  // Probability that a discordant pair favours phi1, under H0 and H1.
  double q0() const;
  double q1() const;
};

struct CompareVerdict {
  Decision decision = Decision::Inconclusive;
  std::size_t pairs_used = 0;
  std::size_t successes1 = 0;
  std::size_t successes2 = 0;
  std::size_t discordant_first = 0;   // phi1 held, phi2 did not
  std::size_t discordant_second = 0;  // phi2 held, phi1 did not
  double log_ratio = 0;
};

// Sequential test of H0: odds(phi1)/odds(phi2) >= u on paired draws: an SPRT
// over discordant pairs. Throws DegenerateDenominator when phi2 never holds
// within the cap; a boundary crossing is only final once phi2 has held.
CompareVerdict compare_probabilities(const PairBatch& gen, const CompareParams& params);

struct Histogram {
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<std::size_t> count;

  std::size_t total() const;
  // Header `bin_lo,bin_hi,count`, one line per bin.
  std::string csv() const;
};

// Sturges binning over [min, max]; all-equal values give one bin [v, v].
Histogram sturges_histogram(std::span<const double> values);

struct ExpectSummary {
  std::size_t n = 0;         // runs where the observable was defined
  std::size_t excluded = 0;  // runs where it was not
  double mean = 0;
  double half_width = 0;  // Student-t 95% half-width
  double min = 0;
  double max = 0;
  Histogram histogram;
};

// Throws BadParameter when fewer than two values are defined.
ExpectSummary summarize_values(std::span<const std::optional<double>> values);

}  // namespace prccsl
