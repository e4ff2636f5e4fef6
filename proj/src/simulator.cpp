#include "prccsl/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "prccsl/error.hpp"
#include "prccsl/parallel.hpp"

namespace prccsl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Tolerance when comparing accumulated real times against integer bounds.
constexpr double kTimeEps = 1e-9;
// Events allowed per run before the model is treated as Zeno.
constexpr std::uint64_t kEventsPerStep = 1000;
constexpr std::uint64_t kEventsBase = 10000;

class VarEnv final : public IntEnv {
 public:
  explicit VarEnv(const std::vector<std::int64_t>& vars) : vars_(vars) {}
  std::int64_t name_value(const IntExpr& node) const override { return vars_[node.slot()]; }

 private:
  const std::vector<std::int64_t>& vars_;
};

struct AutomatonState {
  int location = 0;
  double reset_time = 0;
  double target = kInf;
};

class Simulation {
 public:
  Simulation(const StaModel& model, Step bound, Rng& rng)
      : model_(model), bound_(bound), rng_(rng), vars_(model.initial_values), ticks_(model.clocks.size()),
        states_(model.automata.size()) {}

  Run run() {
    for (std::size_t a = 0; a < states_.size(); ++a) {
      states_[a].location = model_.automata[a].initial;
      sample(a, 0.0);
    }
    const std::uint64_t limit = kEventsBase + kEventsPerStep * static_cast<std::uint64_t>(bound_);
    std::optional<Step> deadlock;
    for (std::uint64_t fired = 0;; ++fired) {
      std::size_t next = 0;
      for (std::size_t a = 1; a < states_.size(); ++a) {
        if (states_[a].target < states_[next].target) next = a;
      }
      const double now = states_[next].target;
      if (!(now < static_cast<double>(bound_))) break;
      if (fired >= limit) {
        throw Error(ErrorCode::InvalidModel, "more than " + std::to_string(limit) +
                                                 " transitions before the bound (Zeno behaviour)");
      }
      if (!fire(next, now)) {
        deadlock = static_cast<Step>(std::floor(now));
        break;
      }
    }

    std::vector<ClockId> declared;
    std::map<ClockId, TickList> lists;
    for (std::size_t c = 0; c < model_.clocks.size(); ++c) {
      declared.emplace_back(model_.clocks[c]);
      lists.emplace(ClockId(model_.clocks[c]), std::move(ticks_[c]));
    }
    Run run(std::move(declared), std::move(lists), bound_);
    return deadlock ? run.with_deadlock(*deadlock) : run;
  }

 private:
  bool guard_holds(const Edge& e) const { return !e.guard || evaluate(*e.guard, VarEnv(vars_)) != 0; }

  void record(int clock, double now) {
    const auto step = static_cast<Step>(std::floor(now));
    auto& list = ticks_[static_cast<std::size_t>(clock)];
    if (list.empty() || list.back() != step) list.push_back(step);
  }

  void apply(std::size_t a, const Edge& e, double now) {
    for (const auto& u : e.update) vars_[u.slot] = evaluate(u.value, VarEnv(vars_));
    if (e.reset) states_[a].reset_time = now;
    for (int c : e.events) record(c, now);
  }

  // Local-clock bound of the earliest enabling among non-receive edges.
  std::optional<double> earliest_after(std::size_t a) const {
    std::optional<double> lo;
    for (const auto& e : model_.automata[a].edges) {
      if (e.from == states_[a].location && e.receive < 0) lo = lo ? std::min(*lo, e.after) : e.after;
    }
    return lo;
  }

  void sample(std::size_t a, double now) {
    AutomatonState& s = states_[a];
    const Location& loc = model_.automata[a].locations[s.location];
    const auto lo = earliest_after(a);
    if (!lo) {
      s.target = loc.invariant ? s.reset_time + *loc.invariant : kInf;
      return;
    }
    const double lower = std::max(*lo, now - s.reset_time);
    s.target = std::max(now, s.reset_time + delay_sample(loc, lower, rng_));
  }

  const Edge* choose(const std::vector<const Edge*>& candidates) {
    if (candidates.empty()) return nullptr;
    if (candidates.size() == 1) return candidates.front();
    std::vector<double> weights;
    for (const Edge* e : candidates) weights.push_back(e->weight);
    return candidates[rng_.weighted(weights)];
  }

  // Returns false when the automaton is time-locked.
  bool fire(std::size_t a, double now) {
    AutomatonState& s = states_[a];
    const Automaton& aut = model_.automata[a];
    const Location& loc = aut.locations[s.location];
    const double elapsed = now - s.reset_time;
    std::vector<const Edge*> enabled;
    for (const auto& e : aut.edges) {
      if (e.from == s.location && e.receive < 0 && e.after <= elapsed + kTimeEps && guard_holds(e)) {
        enabled.push_back(&e);
      }
    }
    const Edge* edge = choose(enabled);
    if (!edge) {
      if (loc.invariant && elapsed < *loc.invariant - kTimeEps) {
        s.target = s.reset_time + *loc.invariant;
        return true;
      }
      if (loc.invariant) return false;
      sample(a, now);
      return true;
    }
    apply(a, *edge, now);
    if (edge->emit >= 0) broadcast(a, edge->emit, now);
    s.location = edge->to;
    sample(a, now);
    return true;
  }

  void broadcast(std::size_t sender, int channel, double now) {
    for (int c : model_.channels[static_cast<std::size_t>(channel)].events) record(c, now);
    for (std::size_t b = 0; b < states_.size(); ++b) {
      if (b == sender) continue;
      AutomatonState& s = states_[b];
      const double elapsed = now - s.reset_time;
      std::vector<const Edge*> ready;
      for (const auto& e : model_.automata[b].edges) {
        if (e.from == s.location && e.receive == channel && e.after <= elapsed + kTimeEps && guard_holds(e)) {
          ready.push_back(&e);
        }
      }
      const Edge* edge = choose(ready);
      if (!edge) continue;
      apply(b, *edge, now);
      s.location = edge->to;
      sample(b, now);
    }
  }

  const StaModel& model_;
  Step bound_;
  Rng& rng_;
  std::vector<std::int64_t> vars_;
  std::vector<TickList> ticks_;
  std::vector<AutomatonState> states_;
};

}  // namespace

double delay_sample(const Location& loc, double lower, Rng& rng) {
  if (loc.invariant) {
    const double hi = *loc.invariant;
    const double lo = std::min(lower, hi);
    return lo == hi ? hi : rng.uniform(lo, hi);
  }
  if (!loc.rate) {
    throw Error(ErrorCode::MissingRate, "location '" + loc.name + "' has neither an invariant nor a rate");
  }
  return lower + rng.exponential(*loc.rate);
}

Run simulate_run(const StaModel& model, Step bound, Rng& rng) {
  if (bound < 1) throw Error(ErrorCode::BadParameter, "bound must be >= 1");
  return Simulation(model, bound, rng).run();
}

std::vector<Run> simulate_batch(const StaModel& model, const SimConfig& cfg) {
  if (cfg.runs < 1) throw Error(ErrorCode::BadParameter, "need at least one run");
  std::vector<Run> runs(cfg.runs);
  parallel_for(cfg.runs, cfg.jobs, [&](std::size_t j) {
    Rng rng = Rng::for_stream(cfg.seed, j);
    try {
      runs[j] = simulate_run(model, cfg.bound, rng);
    } catch (const Error& e) {
      throw Error(e.code(), "run " + std::to_string(j) + ": " + e.what());
    }
  });
  return runs;
}

std::shared_ptr<const Run> SimulatorSource::run(std::size_t j, Step bound) const {
  Rng rng = Rng::for_stream(seed_, j);
  try {
    return std::make_shared<const Run>(simulate_run(model_, bound, rng));
  } catch (const Error& e) {
    throw Error(e.code(), "run " + std::to_string(j) + ": " + e.what());
  }
}

TraceSource::TraceSource(std::vector<Run> runs) {
  for (auto& r : runs) runs_.push_back(std::make_shared<const Run>(std::move(r)));
}

std::shared_ptr<const Run> TraceSource::run(std::size_t j, Step bound) const {
  if (j >= runs_.size()) return nullptr;
  if (runs_[j]->n() <= bound) return runs_[j];
  return std::make_shared<const Run>(truncate_run(*runs_[j], bound));
}

Run truncate_run(const Run& run, Step bound) {
  if (bound >= run.n()) return run;
  if (bound < 0) throw Error(ErrorCode::IndexOutOfRange, "negative bound");
  std::map<ClockId, TickList> lists;
  for (const auto& c : run.clocks()) {
    const TickList& t = run.ticks(c);
    lists.emplace(c, TickList(t.begin(), std::lower_bound(t.begin(), t.end(), bound)));
  }
  Run out(run.clocks(), std::move(lists), bound);
  if (run.deadlock_step() && *run.deadlock_step() <= bound) out = out.with_deadlock(*run.deadlock_step());
  return out;
}

}  // namespace prccsl
