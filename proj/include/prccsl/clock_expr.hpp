#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "prccsl/trace.hpp"

namespace prccsl {

// A non-negative integer parameter written as a sum of literals and named
// constants, e.g. `(W_ctrl + W_vd)`. Names keep their resolved value so the
// amount can be printed back symbolically.
struct AmountTerm {
  std::string name;  // empty for a literal
  std::int64_t value = 0;

  friend bool operator==(const AmountTerm&, const AmountTerm&) = default;
};

struct Amount {
  std::vector<AmountTerm> terms;

  static Amount literal(std::int64_t v) { return Amount{{AmountTerm{"", v}}}; }
  std::int64_t value() const;

  friend bool operator==(const Amount&, const Amount&) = default;
};

class ClockExpr {
 public:
  enum class Kind { Named, PeriodicOn, DelayFor, Inf, Sup };

  ClockExpr() = default;

  static ClockExpr named(std::string name);
  static ClockExpr periodic_on(ClockExpr base, Amount period);
  static ClockExpr delay_for(ClockExpr base, Amount delay, ClockExpr reference);
  static ClockExpr inf(ClockExpr left, ClockExpr right);
  static ClockExpr sup(ClockExpr left, ClockExpr right);
  // Left-nested fold: inf(inf(a, b), c) ...; needs at least one operand.
  static ClockExpr inf_of(const std::vector<ClockExpr>& operands);
  static ClockExpr sup_of(const std::vector<ClockExpr>& operands);

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const Amount& amount() const noexcept { return amount_; }
  // base for PeriodicOn/DelayFor, left operand for Inf/Sup.
  const ClockExpr& first() const { return *first_; }
  // reference for DelayFor, right operand for Inf/Sup.
  const ClockExpr& second() const { return *second_; }

  bool valid() const noexcept { return kind_ != Kind::Named || !name_.empty(); }

  // Every clock or definition name mentioned in the expression.
  void collect_names(std::set<std::string>& out) const;

  friend bool operator==(const ClockExpr& a, const ClockExpr& b);

 private:
  Kind kind_ = Kind::Named;
  std::string name_;
  Amount amount_;
  std::shared_ptr<const ClockExpr> first_;
  std::shared_ptr<const ClockExpr> second_;
};

// Derived-clock definitions (`let x = expr`), consulted before run clocks.
using Definitions = std::map<std::string, ClockExpr>;

// Evaluates expressions over one run, memoizing named definitions.
// Throws UnknownClock and CyclicDefinition.
class ExprEvaluator {
 public:
  ExprEvaluator(const Run& run, const Definitions& defs);

  const TickList& eval(const ClockExpr& e);
  const TickList& eval_name(const std::string& name);
  const Run& run() const noexcept { return run_; }

 private:
  TickList compute(const ClockExpr& e);

  const Run& run_;
  const Definitions& defs_;
  std::map<std::string, TickList> memo_;
  std::set<std::string> active_;
  std::vector<std::unique_ptr<TickList>> scratch_;
};

TickList eval_expr(const Run& run, const ClockExpr& e, const Definitions& defs = {});

TickList eval_periodic_on(std::span<const Step> base, std::int64_t q);
TickList eval_delay_for(std::span<const Step> base, std::span<const Step> reference, std::int64_t d);
TickList eval_infimum(std::span<const Step> left, std::span<const Step> right);
TickList eval_supremum(std::span<const Step> left, std::span<const Step> right);

}  // namespace prccsl
