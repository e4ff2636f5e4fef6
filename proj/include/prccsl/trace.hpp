#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace prccsl {

// Index of a universal-clock step (1 ms). Steps of a run are 0..n inclusive.
using Step = std::int64_t;

// Sorted, strictly increasing step indices at which one clock ticks.
using TickList = std::vector<Step>;

class ClockId {
 public:
  ClockId() = default;
  explicit ClockId(std::string name);

  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const ClockId&, const ClockId&) = default;
  friend auto operator<=>(const ClockId&, const ClockId&) = default;

 private:
  std::string name_;
};

// R(i): the clocks ticking at one step, sorted by name.
using TickSet = std::vector<ClockId>;

// The universal clock. A run that does not declare it ticks `ms` implicitly
// at every step 0..n-1.
inline const std::string kUniversalClock = "ms";

class HistoryTable;

// A finite run: steps 0..n, each with the set of clocks ticking there.
// Immutable once built; safe to share between threads.
class Run {
 public:
  Run() = default;

  // `declared` fixes the clock order used by serialization; every key of
  // `ticks` must be declared. Throws IndexOutOfRange / NonMonotone /
  // UnknownClock.
  Run(std::vector<ClockId> declared, std::map<ClockId, TickList> ticks, Step n);

  Step n() const noexcept { return n_; }
  Step step_count() const noexcept { return n_ + 1; }
  const std::vector<ClockId>& clocks() const noexcept { return declared_; }
  bool declares(const ClockId& c) const;

  // Tick list of a declared clock (empty if it never ticks). The universal
  // clock resolves to 0..n-1 when undeclared. Throws UnknownClock.
  const TickList& ticks(const ClockId& c) const;

  TickSet tick_set(Step i) const;
  bool ticks_at(const ClockId& c, Step i) const;

  // Number of ticks of c strictly before step i; history(c, 0) == 0.
  std::int64_t history(const ClockId& c, Step i) const;
  HistoryTable history_table(const ClockId& c) const;

  // Set by the simulator when the model time-locked; ticks stop there.
  std::optional<Step> deadlock_step() const noexcept { return deadlock_; }
  Run with_deadlock(Step at) const;

  friend bool operator==(const Run&, const Run&) = default;

 private:
  void check_step(Step i) const;

  std::vector<ClockId> declared_;
  std::map<ClockId, TickList> ticks_;
  Step n_ = 0;
  TickList universal_;
  std::optional<Step> deadlock_;
};

// Materialized H_R^c(0..n).
class HistoryTable {
 public:
  HistoryTable(std::span<const Step> ticks, Step n);

  std::int64_t at(Step i) const;
  Step n() const noexcept { return static_cast<Step>(values_.size()) - 1; }
  const std::vector<std::int64_t>& values() const noexcept { return values_; }

 private:
  std::vector<std::int64_t> values_;
};

// Builds a run whose declared clocks are the keys of `tick_lists`.
Run build_run(const std::map<ClockId, TickList>& tick_lists, Step n);

// Count of entries of a sorted tick list strictly below i.
std::int64_t count_before(std::span<const Step> ticks, Step i);

}  // namespace prccsl
