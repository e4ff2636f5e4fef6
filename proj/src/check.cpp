#include "prccsl/check.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "json.hpp"
#include "prccsl/error.hpp"
#include "prccsl/monitor.hpp"
#include "prccsl/parallel.hpp"

namespace prccsl {

namespace {

using nlohmann::ordered_json;

constexpr std::size_t kMinBatch = 64;
constexpr double kDefaultAlpha = 0.05;
constexpr double kDefaultDelta = 0.01;
constexpr double kDefaultConfidence = 0.95;
constexpr double kDefaultEpsilon = 0.05;

std::size_t batch_size(std::size_t jobs) { return std::max(kMinBatch, 4 * (jobs == 0 ? default_jobs() : jobs)); }

Step pick_bound(const CheckOptions& o, Step from_query) {
  const Step b = o.bound.value_or(from_query);
  if (b < 1) throw Error(ErrorCode::BadParameter, "bound must be >= 1");
  return b;
}

// Computes f(run j) for j in [first, first + count) in parallel, cut at the
// first index the source does not hold.
template <typename T, typename Fn>
std::vector<T> map_runs(const RunSource& source, std::size_t first, std::size_t count, Step bound,
                        std::size_t jobs, Fn&& f) {
  std::vector<T> out(count);
  std::vector<char> present(count, 0);
  parallel_for(count, jobs, [&](std::size_t i) {
    auto run = source.run(first + i, bound);
    if (!run) return;
    out[i] = f(*run);
    present[i] = 1;
  });
  const auto end = std::find(present.begin(), present.end(), 0);
  out.resize(static_cast<std::size_t>(end - present.begin()));
  return out;
}

OutcomeBatch outcome_batch(const RunSource& source, const RunMonitor& mon, Step bound, std::size_t jobs) {
  return [&source, &mon, bound, jobs](std::size_t first, std::size_t count) {
    return map_runs<std::uint8_t>(source, first, count, bound, jobs,
                                  [&](const Run& r) { return static_cast<std::uint8_t>(mon.holds(r)); });
  };
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

int exit_for(Decision d) {
  switch (d) {
    case Decision::Accept: return 0;
    case Decision::Reject: return 3;
    case Decision::Inconclusive: return 4;
  }
  return 4;
}

}  // namespace

void check_event_map(const SpecFile& spec, const StaModel& model) {
  const std::set<std::string> produced(model.clocks.begin(), model.clocks.end());
  for (const auto& c : spec.clocks) {
    if (c.name != kUniversalClock && !produced.count(c.name)) {
      throw Error(ErrorCode::InvalidModel, "clock '" + c.name + "' is not produced by any event of the model");
    }
  }
}

Report run_query(const SpecFile& spec, const std::string& query_id, const RunSource& source,
                 const CheckOptions& options) {
  const Query* q = spec.find_query(query_id);
  if (!q) throw Error(ErrorCode::UnknownQuery, "unknown query '" + query_id + "'");
  const auto started = std::chrono::steady_clock::now();
  const std::size_t batch = batch_size(options.jobs);

  Report report;
  report.query_id = q->id;
  ordered_json j;
  j["query"] = q->id;
  j["kind"] = nullptr;  // filled in below, kept near the top of the report
  j["text"] = print_query_body(q->body);
  ordered_json params;
  params["seed"] = options.seed;
  params["source"] = options.source;

  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, HypothesisQuery>) {
          report.kind = "hypothesis";
          const RunMonitor mon = RunMonitor::resolve(spec, b.monitor);
          SprtParams p;
          p.theta = b.theta ? b.theta->to_double() : mon.threshold().to_double();
          p.alpha = options.alpha.value_or(b.alpha.value_or(kDefaultAlpha));
          p.beta = options.beta.value_or(b.beta.value_or(kDefaultAlpha));
          p.delta = options.delta.value_or(b.delta.value_or(kDefaultDelta));
          p.max_runs = options.runs.value_or(kDefaultMaxRuns);
          p.batch = batch;
          const Step bound = pick_bound(options, b.bound);
          params["bound"] = bound;
          params["theta"] = p.theta;
          params["alpha"] = p.alpha;
          params["beta"] = p.beta;
          params["delta"] = p.delta;
          params["max_runs"] = p.max_runs;
          const Verdict v = hypothesis_test(outcome_batch(source, mon, bound, options.jobs), p);
          report.decision = decision_name(v.decision);
          report.exit_code = exit_for(v.decision);
          j["decision"] = report.decision;
          j["m"] = v.satisfied;
          j["k"] = v.runs_used;
          j["log_likelihood_ratio"] = v.log_ratio;
        } else if constexpr (std::is_same_v<T, EstimateQuery>) {
          report.kind = "estimate";
          const RunMonitor mon = RunMonitor::resolve(spec, b.monitor);
          const double confidence =
              options.alpha ? 1 - *options.alpha : b.confidence.value_or(kDefaultConfidence);
          const double epsilon = options.epsilon.value_or(b.epsilon.value_or(kDefaultEpsilon));
          const Step bound = pick_bound(options, b.bound);
          params["bound"] = bound;
          params["confidence"] = confidence;
          params["epsilon"] = epsilon;
          if (options.runs) params["runs"] = *options.runs;
          const Estimate e = estimate_probability(outcome_batch(source, mon, bound, options.jobs), confidence,
                                                  epsilon, options.runs, batch);
          const bool holds = ratio_at_least(e.m, e.k, mon.threshold());
          report.decision = holds ? "holds" : "violated";
          report.exit_code = holds ? 0 : 3;
          j["decision"] = report.decision;
          j["threshold"] = mon.threshold().to_string();
          j["m"] = e.m;
          j["k"] = e.k;
          j["requested_runs"] = e.requested;
          j["estimate"] = e.point;
          j["interval"] = {e.interval.lo, e.interval.hi};
        } else if constexpr (std::is_same_v<T, CompareQuery>) {
          report.kind = "compare";
          const RunMonitor m1 = RunMonitor::resolve(spec, b.first);
          const RunMonitor m2 = RunMonitor::resolve(spec, b.second);
          CompareParams p;
          p.ratio = b.ratio;
          p.alpha = options.alpha.value_or(kDefaultAlpha);
          p.beta = options.beta.value_or(kDefaultAlpha);
          p.max_pairs = options.runs.value_or(kDefaultMaxRuns);
          p.batch = batch;
          const Step bound1 = pick_bound(options, b.bound1);
          const Step bound2 = pick_bound(options, b.bound2);
          params["bound1"] = bound1;
          params["bound2"] = bound2;
          params["ratio"] = p.ratio;
          params["alpha"] = p.alpha;
          params["beta"] = p.beta;
          params["max_pairs"] = p.max_pairs;
          const PairBatch gen = [&](std::size_t first, std::size_t count) {
            using Pair = std::pair<bool, bool>;
            std::vector<std::optional<Pair>> raw(count);
            parallel_for(count, options.jobs, [&](std::size_t i) {
              const std::size_t pair = first + i;
              auto r1 = source.run(2 * pair, bound1);
              auto r2 = r1 ? source.run(2 * pair + 1, bound2) : nullptr;
              if (r1 && r2) raw[i] = Pair{m1.holds(*r1), m2.holds(*r2)};
            });
            std::vector<Pair> out;
            for (const auto& r : raw) {
              if (!r) break;
              out.push_back(*r);
            }
            return out;
          };
          const CompareVerdict v = compare_probabilities(gen, p);
          report.decision = decision_name(v.decision);
          report.exit_code = exit_for(v.decision);
          j["decision"] = report.decision;
          j["pairs"] = v.pairs_used;
          j["m1"] = v.successes1;
          j["m2"] = v.successes2;
          j["discordant_first"] = v.discordant_first;
          j["discordant_second"] = v.discordant_second;
          j["log_likelihood_ratio"] = v.log_ratio;
        } else if constexpr (std::is_same_v<T, ExpectQuery>) {
          report.kind = "expect";
          const Step bound = pick_bound(options, b.bound);
          const std::size_t n = options.runs.value_or(static_cast<std::size_t>(b.runs));
          if (n < 2) throw Error(ErrorCode::BadParameter, "expected value needs at least two runs");
          params["bound"] = bound;
          params["runs"] = n;
          const Definitions defs = spec.definitions();
          const auto values = map_runs<std::optional<double>>(
              source, 0, n, bound, options.jobs,
              [&](const Run& r) { return observe(b.observable, b.maximize, r, defs); });
          const ExpectSummary s = summarize_values(values);
          report.decision = "done";
          report.histogram_csv = s.histogram.csv();
          j["decision"] = report.decision;
          j["runs"] = values.size();
          j["n"] = s.n;
          j["excluded"] = s.excluded;
          j["mean"] = s.mean;
          j["half_width"] = s.half_width;
          j["min"] = s.min;
          j["max"] = s.max;
          ordered_json bins = ordered_json::array();
          for (std::size_t i = 0; i < s.histogram.count.size(); ++i) {
            bins.push_back({{"lo", s.histogram.lo[i]}, {"hi", s.histogram.hi[i]}, {"count", s.histogram.count[i]}});
          }
          j["histogram"] = bins;
        } else {
          report.kind = "simulate";
          const Step bound = pick_bound(options, b.bound);
          const std::size_t n = options.runs.value_or(static_cast<std::size_t>(b.runs));
          if (n < 1) throw Error(ErrorCode::BadParameter, "simulate needs at least one run");
          params["bound"] = bound;
          params["runs"] = n;
          const Definitions defs = spec.definitions();
          const auto trajectories = map_runs<std::vector<std::vector<std::int64_t>>>(
              source, 0, n, bound, options.jobs,
              [&](const Run& r) { return evaluate_trajectories(b.exprs, r, defs); });
          std::string csv = "run,step";
          for (const auto& e : b.exprs) csv += "," + csv_quote(to_string(e));
          csv += "\n";
          for (std::size_t r = 0; r < trajectories.size(); ++r) {
            const auto& t = trajectories[r];
            for (std::size_t step = 0; step < t.front().size(); ++step) {
              csv += std::to_string(r) + "," + std::to_string(step);
              for (const auto& col : t) csv += "," + std::to_string(col[step]);
              csv += "\n";
            }
          }
          report.trajectories_csv = std::move(csv);
          report.decision = "done";
          j["decision"] = report.decision;
          j["runs"] = trajectories.size();
          ordered_json finals = ordered_json::array();
          for (const auto& t : trajectories) {
            ordered_json row = ordered_json::array();
            for (const auto& col : t) row.push_back(col.back());
            finals.push_back(row);
          }
          j["final_values"] = finals;
        }
      },
      q->body);

  j["kind"] = report.kind;
  j["parameters"] = params;
  j["exit_code"] = report.exit_code;
  j["wall_clock_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  report.json = j.dump(2) + "\n";
  return report;
}

}  // namespace prccsl
