#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "prccsl/simulator.hpp"
#include "prccsl/smc.hpp"
#include "prccsl/spec.hpp"

namespace prccsl {

// Command-line style overrides; unset fields fall back to the query text,
// then to the library defaults.
struct CheckOptions {
  std::uint64_t seed = 42;  // echoed in the report; the source carries the streams
  std::size_t jobs = 0;     // 0: available parallelism
  std::optional<Step> bound;
  std::optional<std::size_t> runs;  // estimate k, expect/simulate N, hypothesis/compare cap
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> delta;
  std::optional<double> epsilon;
  std::string source = "model";  // "model" or "traces", for the report
};

struct Report {
  std::string query_id;
  std::string kind;      // hypothesis | estimate | compare | expect | simulate
  std::string decision;  // accept | reject | inconclusive | holds | violated | done
  int exit_code = 0;     // 0 accept/holds/done, 3 reject/violated, 4 inconclusive
  std::string json;
  std::string histogram_csv;     // expect queries
  std::string trajectories_csv;  // simulate queries
};

inline constexpr std::size_t kDefaultMaxRuns = 10000;

// Every clock the spec declares must be produced by the model's event map.
// Throws InvalidModel naming the first missing clock.
void check_event_map(const SpecFile& spec, const StaModel& model);

// Throws UnknownQuery, BadParameter, GeneratorFailure, DegenerateDenominator.
Report run_query(const SpecFile& spec, const std::string& query_id, const RunSource& source,
                 const CheckOptions& options = {});

}  // namespace prccsl
