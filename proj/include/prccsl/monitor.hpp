#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prccsl/clock_expr.hpp"
#include "prccsl/int_expr.hpp"
#include "prccsl/rational.hpp"
#include "prccsl/relations.hpp"
#include "prccsl/spec.hpp"
#include "prccsl/trace.hpp"

namespace prccsl {

// Values of each expression at steps 0..n, where h(c) is the history of c at
// the step and t(c) is 1 when c ticks there. Clocks may be run clocks or
// definitions. Result is indexed [expression][step].
std::vector<std::vector<std::int64_t>> evaluate_trajectories(const std::vector<IntExpr>& exprs, const Run& run,
                                                             const Definitions& defs = {});

// Per-run boolean property resolved from a query's monitor reference.
class RunMonitor {
 public:
  // Throws UnknownConstraint for a bad label or relation index.
  static RunMonitor resolve(const SpecFile& spec, const MonitorRef& ref);
  static RunMonitor of_relations(std::vector<ProbRelation> relations, Definitions defs = {});
  static RunMonitor always(IntExpr predicate, Definitions defs = {});
  static RunMonitor eventually(IntExpr predicate, Definitions defs = {});

  bool holds(const Run& run) const;

  // The constraint's p for relation monitors, the default threshold otherwise.
  const Rational& threshold() const noexcept { return threshold_; }
  const std::vector<ProbRelation>& relations() const noexcept { return relations_; }

 private:
  MonitorRef::Kind kind_ = MonitorRef::Kind::Constraint;
  std::vector<ProbRelation> relations_;
  IntExpr predicate_;
  Definitions defs_;
  Rational threshold_ = kDefaultThreshold;
};

// Per-run extremum of an observable; nullopt where it is undefined (a gap
// needs two ticks, a latency one matched pair).
std::optional<double> observe(const Observable& obs, bool maximize, const Run& run, const Definitions& defs = {});

}  // namespace prccsl
