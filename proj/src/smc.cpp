#include "prccsl/smc.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <exception>
#include <sstream>

#include "prccsl/error.hpp"

namespace prccsl {

namespace {

constexpr double kExpectConfidence = 0.95;

template <typename Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::GeneratorFailure) throw;
    throw Error(ErrorCode::GeneratorFailure, std::string(error_code_name(e.code())) + ": " + e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::GeneratorFailure, e.what());
  }
}

void check_strength(double v, const char* name) {
  if (!(v > 0.0 && v < 0.5)) throw Error(ErrorCode::BadParameter, std::string(name) + " must lie in (0, 0.5)");
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string_view decision_name(Decision d) noexcept {
  switch (d) {
    case Decision::Accept: return "accept";
    case Decision::Reject: return "reject";
    case Decision::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

void SprtParams::validate() const {
  check_strength(alpha, "alpha");
  check_strength(beta, "beta");
  if (!(delta > 0.0 && theta - delta > 0.0 && theta + delta < 1.0)) {
    throw Error(ErrorCode::BadParameter, "need 0 < theta-delta < theta+delta < 1");
  }
  if (max_runs == 0 || batch == 0) throw Error(ErrorCode::BadParameter, "max_runs and batch must be positive");
}

Verdict hypothesis_test(const OutcomeBatch& gen, const SprtParams& params) {
  params.validate();
  const double p0 = params.theta + params.delta;
  const double p1 = params.theta - params.delta;
  const double step_success = std::log(p1 / p0);
  const double step_failure = std::log((1 - p1) / (1 - p0));
  const double log_a = std::log(params.upper_threshold());
  const double log_b = std::log(params.lower_threshold());

  Verdict v;
  while (v.runs_used < params.max_runs) {
    const std::size_t count = std::min(params.batch, params.max_runs - v.runs_used);
    const auto outcomes = guarded([&] { return gen(v.runs_used, count); });
    for (std::uint8_t ok : outcomes) {
      ++v.runs_used;
      if (ok) ++v.satisfied;
      v.log_ratio += ok ? step_success : step_failure;
      if (v.log_ratio >= log_a) {
        v.decision = Decision::Reject;
        return v;
      }
      if (v.log_ratio <= log_b) {
        v.decision = Decision::Accept;
        return v;
      }
    }
    if (outcomes.size() < count) break;
  }
  return v;
}

Interval clopper_pearson(std::size_t m, std::size_t k, double confidence) {
  if (k == 0) throw Error(ErrorCode::EmptyEnsemble, "no runs");
  if (m > k) throw Error(ErrorCode::BadParameter, "more successes than runs");
  if (!(confidence > 0.0 && confidence < 1.0)) throw Error(ErrorCode::BadParameter, "confidence must lie in (0, 1)");
  const double a = 1 - confidence;
  const double md = static_cast<double>(m);
  const double kd = static_cast<double>(k);
  Interval out;
  out.lo = m == 0 ? 0.0 : boost::math::ibeta_inv(md, kd - md + 1, a / 2);
  out.hi = m == k ? 1.0 : boost::math::ibeta_inv(md + 1, kd - md, 1 - a / 2);
  return out;
}

std::size_t chernoff_runs(double alpha, double epsilon) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::BadParameter, "alpha and epsilon must lie in (0, 1)");
  }
  return static_cast<std::size_t>(std::ceil(std::log(2 / alpha) / (2 * epsilon * epsilon)));
}

Estimate estimate_probability(const OutcomeBatch& gen, double confidence, double epsilon,
                              std::optional<std::size_t> runs, std::size_t batch) {
  if (batch == 0) throw Error(ErrorCode::BadParameter, "batch must be positive");
  Estimate e;
  e.confidence = confidence;
  e.epsilon = epsilon;
  e.requested = runs ? *runs : chernoff_runs(1 - confidence, epsilon);
  if (e.requested == 0) throw Error(ErrorCode::BadParameter, "runs must be positive");
  while (e.k < e.requested) {
    const std::size_t count = std::min(batch, e.requested - e.k);
    const auto outcomes = guarded([&] { return gen(e.k, count); });
    for (std::uint8_t ok : outcomes) {
      ++e.k;
      if (ok) ++e.m;
    }
    if (outcomes.size() < count) break;
  }
  if (e.k == 0) throw Error(ErrorCode::EmptyEnsemble, "the run source is empty");
  e.point = static_cast<double>(e.m) / static_cast<double>(e.k);
  e.interval = clopper_pearson(e.m, e.k, confidence);
  return e;
}

void CompareParams::validate() const {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) throw Error(ErrorCode::BadParameter, "ratio must be > 0");
  check_strength(alpha, "alpha");
  check_strength(beta, "beta");
  if (max_pairs == 0 || batch == 0) throw Error(ErrorCode::BadParameter, "max_pairs and batch must be positive");
}

double CompareParams::q0() const { return ratio / (1 + ratio); }

double CompareParams::q1() const {
  // H1 is odds ratio <= 1 for u > 1, and <= u/2 otherwise, so that q1 < q0.
  const double r1 = ratio > 1 ? 1.0 : ratio / 2;
  return r1 / (1 + r1);
}

CompareVerdict compare_probabilities(const PairBatch& gen, const CompareParams& params) {
  params.validate();
  const double q0 = params.q0();
  const double q1 = params.q1();
  const double step_first = std::log(q1 / q0);
  const double step_second = std::log((1 - q1) / (1 - q0));
  const double log_a = std::log((1 - params.beta) / params.alpha);
  const double log_b = std::log(params.beta / (1 - params.alpha));

  CompareVerdict v;
  std::optional<Decision> pending;
  while (v.pairs_used < params.max_pairs) {
    const std::size_t count = std::min(params.batch, params.max_pairs - v.pairs_used);
    const auto pairs = guarded([&] { return gen(v.pairs_used, count); });
    for (const auto& [a, b] : pairs) {
      ++v.pairs_used;
      v.successes1 += a;
      v.successes2 += b;
      if (!pending && a != b) {
        if (a) ++v.discordant_first;
        else ++v.discordant_second;
        v.log_ratio += a ? step_first : step_second;
        if (v.log_ratio >= log_a) pending = Decision::Reject;
        else if (v.log_ratio <= log_b) pending = Decision::Accept;
      }
      if (pending && v.successes2 > 0) {
        v.decision = *pending;
        return v;
      }
    }
    if (pairs.size() < count) break;
  }
  if (v.successes2 == 0) {
    throw Error(ErrorCode::DegenerateDenominator,
                "the second property never held in " + std::to_string(v.pairs_used) + " pairs");
  }
  return v;
}

std::size_t Histogram::total() const {
  std::size_t sum = 0;
  for (std::size_t c : count) sum += c;
  return sum;
}

std::string Histogram::csv() const {
  std::string out = "bin_lo,bin_hi,count\n";
  for (std::size_t i = 0; i < count.size(); ++i) {
    out += format_number(lo[i]) + "," + format_number(hi[i]) + "," + std::to_string(count[i]) + "\n";
  }
  return out;
}

Histogram sturges_histogram(std::span<const double> values) {
  Histogram h;
  if (values.empty()) return h;
  const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
  const double mn = *mn_it;
  const double mx = *mx_it;
  if (mn == mx) {
    h.lo = {mn};
    h.hi = {mx};
    h.count = {values.size()};
    return h;
  }
  const auto bins = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(values.size())))) + 1;
  const double width = (mx - mn) / static_cast<double>(bins);
  h.count.assign(bins, 0);
  for (std::size_t b = 0; b < bins; ++b) {
    h.lo.push_back(mn + width * static_cast<double>(b));
    h.hi.push_back(b + 1 == bins ? mx : mn + width * static_cast<double>(b + 1));
  }
  for (double v : values) {
    auto b = static_cast<std::size_t>((v - mn) / width);
    h.count[std::min(b, bins - 1)] += 1;
  }
  return h;
}

ExpectSummary summarize_values(std::span<const std::optional<double>> values) {
  ExpectSummary s;
  std::vector<double> defined;
  for (const auto& v : values) {
    if (v) defined.push_back(*v);
    else ++s.excluded;
  }
  s.n = defined.size();
  if (s.n < 2) throw Error(ErrorCode::BadParameter, "fewer than two runs define the observable");
  double sum = 0;
  for (double v : defined) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  double ss = 0;
  for (double v : defined) ss += (v - s.mean) * (v - s.mean);
  const double sd = std::sqrt(ss / static_cast<double>(s.n - 1));
  const boost::math::students_t dist(static_cast<double>(s.n - 1));
  const double t = boost::math::quantile(dist, 1 - (1 - kExpectConfidence) / 2);
  s.half_width = t * sd / std::sqrt(static_cast<double>(s.n));
  s.min = *std::min_element(defined.begin(), defined.end());
  s.max = *std::max_element(defined.begin(), defined.end());
  s.histogram = sturges_histogram(defined);
  return s;
}

}  // namespace prccsl
