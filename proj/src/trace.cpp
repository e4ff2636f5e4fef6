#include "prccsl/trace.hpp"

#include <algorithm>

#include "prccsl/error.hpp"

namespace prccsl {

ClockId::ClockId(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw Error(ErrorCode::BadParameter, "empty clock name");
}

Run::Run(std::vector<ClockId> declared, std::map<ClockId, TickList> ticks, Step n)
    : declared_(std::move(declared)), ticks_(std::move(ticks)), n_(n) {
  if (n_ < 0) throw Error(ErrorCode::IndexOutOfRange, "negative step count");
  std::vector<ClockId> sorted = declared_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::BadParameter, "clock declared twice in run");
  }
  for (const auto& [clock, list] : ticks_) {
    if (!std::binary_search(sorted.begin(), sorted.end(), clock)) {
      throw Error(ErrorCode::UnknownClock, "clock '" + clock.name() + "' is not declared");
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i] < 0 || list[i] > n_) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "tick of '" + clock.name() + "' at step " + std::to_string(list[i]) + " outside [0, " +
                        std::to_string(n_) + "]");
      }
      if (i > 0 && list[i] <= list[i - 1]) {
        throw Error(ErrorCode::NonMonotone, "ticks of '" + clock.name() + "' are not strictly increasing");
      }
    }
  }
  for (const auto& c : declared_) ticks_.try_emplace(c);
  if (!declares(ClockId(kUniversalClock))) {
    universal_.resize(static_cast<std::size_t>(n_));
    for (Step i = 0; i < n_; ++i) universal_[static_cast<std::size_t>(i)] = i;
  }
}

bool Run::declares(const ClockId& c) const { return ticks_.count(c) != 0; }

const TickList& Run::ticks(const ClockId& c) const {
  if (auto it = ticks_.find(c); it != ticks_.end()) return it->second;
  if (c.name() == kUniversalClock) return universal_;
  throw Error(ErrorCode::UnknownClock, "unknown clock '" + c.name() + "'");
}

void Run::check_step(Step i) const {
  if (i < 0 || i > n_) {
    throw Error(ErrorCode::IndexOutOfRange,
                "step " + std::to_string(i) + " outside [0, " + std::to_string(n_) + "]");
  }
}

TickSet Run::tick_set(Step i) const {
  check_step(i);
  TickSet out;
  for (const auto& [clock, list] : ticks_) {
    if (std::binary_search(list.begin(), list.end(), i)) out.push_back(clock);
  }
  return out;
}

bool Run::ticks_at(const ClockId& c, Step i) const {
  check_step(i);
  const auto& list = ticks(c);
  return std::binary_search(list.begin(), list.end(), i);
}

std::int64_t Run::history(const ClockId& c, Step i) const {
  check_step(i);
  return count_before(ticks(c), i);
}

HistoryTable Run::history_table(const ClockId& c) const { return HistoryTable(ticks(c), n_); }

Run Run::with_deadlock(Step at) const {
  check_step(at);
  Run copy = *this;
  copy.deadlock_ = at;
  return copy;
}

HistoryTable::HistoryTable(std::span<const Step> ticks, Step n) : values_(static_cast<std::size_t>(n) + 1, 0) {
  std::size_t k = 0;
  for (Step i = 1; i <= n; ++i) {
    while (k < ticks.size() && ticks[k] < i) ++k;
    values_[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(k);
  }
}

std::int64_t HistoryTable::at(Step i) const {
  if (i < 0 || i > n()) throw Error(ErrorCode::IndexOutOfRange, "history index out of range");
  return values_[static_cast<std::size_t>(i)];
}

Run build_run(const std::map<ClockId, TickList>& tick_lists, Step n) {
  std::vector<ClockId> declared;
  declared.reserve(tick_lists.size());
  for (const auto& entry : tick_lists) declared.push_back(entry.first);
  return Run(std::move(declared), tick_lists, n);
}

std::int64_t count_before(std::span<const Step> ticks, Step i) {
  return std::lower_bound(ticks.begin(), ticks.end(), i) - ticks.begin();
}

}  // namespace prccsl
