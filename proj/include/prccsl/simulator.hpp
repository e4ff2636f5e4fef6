#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prccsl/rng.hpp"
#include "prccsl/sta.hpp"
#include "prccsl/trace.hpp"

namespace prccsl {

struct SimConfig {
  Step bound = 3000;
  std::uint64_t seed = 42;
  std::size_t runs = 1;
  std::size_t jobs = 0;  // 0: available parallelism
};

// Local-clock value at which a location's automaton fires, given that it may
// not fire before `lower`: uniform on [lower, invariant] when bounded,
// lower + Exp(rate) otherwise. Throws MissingRate.
double delay_sample(const Location& loc, double lower, Rng& rng);

// One run with steps 0..bound; an event at real time tau ticks its clock at
// step floor(tau), events at tau >= bound are dropped. A time-locked model
// yields a run flagged with its deadlock step. Throws InvalidModel (Zeno
// behaviour), MissingRate, BadParameter.
Run simulate_run(const StaModel& model, Step bound, Rng& rng);

// Run j uses Rng::for_stream(cfg.seed, j); output is ordered by j whatever
// the scheduling. Errors carry the failing run index.
std::vector<Run> simulate_batch(const StaModel& model, const SimConfig& cfg);

// Supplier of run j of an ensemble for a given horizon. Implementations are
// safe to call concurrently.
class RunSource {
 public:
  virtual ~RunSource() = default;
  // nullptr when the source holds no run j.
  virtual std::shared_ptr<const Run> run(std::size_t j, Step bound) const = 0;
  virtual std::optional<std::size_t> size() const { return std::nullopt; }
};

class SimulatorSource final : public RunSource {
 public:
  SimulatorSource(StaModel model, std::uint64_t seed) : model_(std::move(model)), seed_(seed) {}
  std::shared_ptr<const Run> run(std::size_t j, Step bound) const override;
  const StaModel& model() const noexcept { return model_; }

 private:
  StaModel model_;
  std::uint64_t seed_;
};

// Pre-recorded runs; runs longer than the requested bound are truncated.
class TraceSource final : public RunSource {
 public:
  explicit TraceSource(std::vector<Run> runs);
  std::shared_ptr<const Run> run(std::size_t j, Step bound) const override;
  std::optional<std::size_t> size() const override { return runs_.size(); }

 private:
  std::vector<std::shared_ptr<const Run>> runs_;
};

// Restriction of a run to steps 0..bound, keeping ticks strictly before the
// bound as a simulation to that bound would (identity when bound >= n).
Run truncate_run(const Run& run, Step bound);

}  // namespace prccsl
