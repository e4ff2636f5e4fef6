#include "prccsl/monitor.hpp"

#include <algorithm>
#include <map>

#include "prccsl/error.hpp"

namespace prccsl {

namespace {

// Walks steps in order, keeping per-clock cursors so that h() and t() are O(1).
class StepEnv final : public IntEnv {
 public:
  explicit StepEnv(std::vector<const TickList*> lists) : lists_(std::move(lists)), cursor_(lists_.size(), 0) {}

  void seek(Step i) {
    for (std::size_t s = 0; s < lists_.size(); ++s) {
      const TickList& l = *lists_[s];
      while (cursor_[s] < l.size() && l[cursor_[s]] < i) ++cursor_[s];
    }
    step_ = i;
  }

  std::int64_t history(int slot) const override { return static_cast<std::int64_t>(cursor_[slot]); }

  std::int64_t tick(int slot) const override {
    const TickList& l = *lists_[slot];
    return cursor_[slot] < l.size() && l[cursor_[slot]] == step_;
  }

 private:
  std::vector<const TickList*> lists_;
  std::vector<std::size_t> cursor_;
  Step step_ = 0;
};

}  // namespace

std::vector<std::vector<std::int64_t>> evaluate_trajectories(const std::vector<IntExpr>& exprs, const Run& run,
                                                             const Definitions& defs) {
  ExprEvaluator ev(run, defs);
  std::map<std::string, int> slots;
  std::vector<const TickList*> lists;
  std::vector<IntExpr> bound;
  for (const auto& e : exprs) {
    bound.push_back(e.bind([&](IntExpr::Kind kind, const std::string& name) {
      if (kind == IntExpr::Kind::Name) return -1;
      auto [it, inserted] = slots.emplace(name, static_cast<int>(lists.size()));
      if (inserted) lists.push_back(&ev.eval_name(name));
      return it->second;
    }));
  }
  StepEnv env(std::move(lists));
  std::vector<std::vector<std::int64_t>> out(exprs.size());
  for (auto& v : out) v.reserve(static_cast<std::size_t>(run.step_count()));
  for (Step i = 0; i <= run.n(); ++i) {
    env.seek(i);
    for (std::size_t k = 0; k < bound.size(); ++k) out[k].push_back(evaluate(bound[k], env));
  }
  return out;
}

RunMonitor RunMonitor::resolve(const SpecFile& spec, const MonitorRef& ref) {
  if (ref.kind == MonitorRef::Kind::Always) return always(ref.predicate, spec.definitions());
  if (ref.kind == MonitorRef::Kind::Eventually) return eventually(ref.predicate, spec.definitions());
  const Constraint* c = spec.find_constraint(ref.label);
  if (!c) throw Error(ErrorCode::UnknownConstraint, "unknown constraint '" + ref.label + "'");
  std::vector<ProbRelation> rels = expand(*c);
  if (ref.index) {
    if (*ref.index < 1 || static_cast<std::size_t>(*ref.index) > rels.size()) {
      throw Error(ErrorCode::UnknownConstraint,
                  "constraint '" + ref.label + "' has no relation " + std::to_string(*ref.index));
    }
    rels = {rels[static_cast<std::size_t>(*ref.index - 1)]};
  }
  RunMonitor m = of_relations(std::move(rels), spec.definitions());
  m.threshold_ = c->threshold();
  return m;
}

RunMonitor RunMonitor::of_relations(std::vector<ProbRelation> relations, Definitions defs) {
  RunMonitor m;
  if (!relations.empty()) m.threshold_ = relations.front().p;
  m.relations_ = std::move(relations);
  m.defs_ = std::move(defs);
  return m;
}

RunMonitor RunMonitor::always(IntExpr predicate, Definitions defs) {
  RunMonitor m;
  m.kind_ = MonitorRef::Kind::Always;
  m.predicate_ = std::move(predicate);
  m.defs_ = std::move(defs);
  return m;
}

RunMonitor RunMonitor::eventually(IntExpr predicate, Definitions defs) {
  RunMonitor m = always(std::move(predicate), std::move(defs));
  m.kind_ = MonitorRef::Kind::Eventually;
  return m;
}

bool RunMonitor::holds(const Run& run) const {
  if (kind_ == MonitorRef::Kind::Constraint) {
    ExprEvaluator ev(run, defs_);
    return std::all_of(relations_.begin(), relations_.end(), [&](const ProbRelation& r) {
      return check_relation(r.kind, ev.eval(r.left), ev.eval(r.right), run.n());
    });
  }
  const auto values = evaluate_trajectories({predicate_}, run, defs_).front();
  if (kind_ == MonitorRef::Kind::Always) {
    return std::all_of(values.begin(), values.end(), [](std::int64_t v) { return v != 0; });
  }
  return std::any_of(values.begin(), values.end(), [](std::int64_t v) { return v != 0; });
}

std::optional<double> observe(const Observable& obs, bool maximize, const Run& run, const Definitions& defs) {
  std::vector<std::int64_t> samples;
  if (obs.kind == Observable::Kind::Value) {
    samples = evaluate_trajectories({obs.value}, run, defs).front();
  } else {
    ExprEvaluator ev(run, defs);
    const TickList& from = ev.eval_name(obs.from);
    if (obs.kind == Observable::Kind::Gap) {
      for (std::size_t k = 1; k < from.size(); ++k) samples.push_back(from[k] - from[k - 1]);
    } else {
      const TickList& to = ev.eval_name(obs.to);
      for (std::size_t k = 0; k < std::min(from.size(), to.size()); ++k) samples.push_back(to[k] - from[k]);
    }
  }
  if (samples.empty()) return std::nullopt;
  const auto v = maximize ? *std::max_element(samples.begin(), samples.end())
                          : *std::min_element(samples.begin(), samples.end());
  return static_cast<double>(v);
}

}  // namespace prccsl
