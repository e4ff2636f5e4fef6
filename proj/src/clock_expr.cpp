#include "prccsl/clock_expr.hpp"

#include <algorithm>

#include "prccsl/error.hpp"

namespace prccsl {

std::int64_t Amount::value() const {
  std::int64_t sum = 0;
  for (const auto& t : terms) sum += t.value;
  return sum;
}

ClockExpr ClockExpr::named(std::string name) {
  ClockExpr e;
  e.name_ = std::move(name);
  return e;
}

ClockExpr ClockExpr::periodic_on(ClockExpr base, Amount period) {
  ClockExpr e;
  e.kind_ = Kind::PeriodicOn;
  e.amount_ = std::move(period);
  e.first_ = std::make_shared<const ClockExpr>(std::move(base));
  return e;
}

ClockExpr ClockExpr::delay_for(ClockExpr base, Amount delay, ClockExpr reference) {
  ClockExpr e;
  e.kind_ = Kind::DelayFor;
  e.amount_ = std::move(delay);
  e.first_ = std::make_shared<const ClockExpr>(std::move(base));
  e.second_ = std::make_shared<const ClockExpr>(std::move(reference));
  return e;
}

ClockExpr ClockExpr::inf(ClockExpr left, ClockExpr right) {
  ClockExpr e;
  e.kind_ = Kind::Inf;
  e.first_ = std::make_shared<const ClockExpr>(std::move(left));
  e.second_ = std::make_shared<const ClockExpr>(std::move(right));
  return e;
}

ClockExpr ClockExpr::sup(ClockExpr left, ClockExpr right) {
  ClockExpr e = inf(std::move(left), std::move(right));
  e.kind_ = Kind::Sup;
  return e;
}

ClockExpr ClockExpr::inf_of(const std::vector<ClockExpr>& operands) {
  if (operands.empty()) throw Error(ErrorCode::BadParameter, "inf needs at least one operand");
  ClockExpr acc = operands.front();
  for (std::size_t i = 1; i < operands.size(); ++i) acc = inf(acc, operands[i]);
  return acc;
}

ClockExpr ClockExpr::sup_of(const std::vector<ClockExpr>& operands) {
  if (operands.empty()) throw Error(ErrorCode::BadParameter, "sup needs at least one operand");
  ClockExpr acc = operands.front();
  for (std::size_t i = 1; i < operands.size(); ++i) acc = sup(acc, operands[i]);
  return acc;
}

void ClockExpr::collect_names(std::set<std::string>& out) const {
  if (kind_ == Kind::Named) {
    out.insert(name_);
    return;
  }
  first_->collect_names(out);
  if (second_) second_->collect_names(out);
}

bool operator==(const ClockExpr& a, const ClockExpr& b) {
  if (a.kind_ != b.kind_ || a.name_ != b.name_ || a.amount_ != b.amount_) return false;
  auto same = [](const std::shared_ptr<const ClockExpr>& x, const std::shared_ptr<const ClockExpr>& y) {
    if (!x || !y) return !x && !y;
    return x == y || *x == *y;
  };
  return same(a.first_, b.first_) && same(a.second_, b.second_);
}

ExprEvaluator::ExprEvaluator(const Run& run, const Definitions& defs) : run_(run), defs_(defs) {}

const TickList& ExprEvaluator::eval_name(const std::string& name) {
  if (auto it = memo_.find(name); it != memo_.end()) return it->second;
  auto def = defs_.find(name);
  if (def == defs_.end()) return run_.ticks(ClockId(name));
  if (!active_.insert(name).second) {
    throw Error(ErrorCode::CyclicDefinition, "definition of '" + name + "' depends on itself");
  }
  TickList ticks = compute(def->second);
  active_.erase(name);
  return memo_.emplace(name, std::move(ticks)).first->second;
}

const TickList& ExprEvaluator::eval(const ClockExpr& e) {
  if (e.kind() == ClockExpr::Kind::Named) return eval_name(e.name());
  scratch_.push_back(std::make_unique<TickList>(compute(e)));
  return *scratch_.back();
}

TickList ExprEvaluator::compute(const ClockExpr& e) {
  switch (e.kind()) {
    case ClockExpr::Kind::Named:
      return eval_name(e.name());
    case ClockExpr::Kind::PeriodicOn:
      return eval_periodic_on(eval(e.first()), e.amount().value());
    case ClockExpr::Kind::DelayFor: {
      const TickList& base = eval(e.first());
      return eval_delay_for(base, eval(e.second()), e.amount().value());
    }
    case ClockExpr::Kind::Inf: {
      const TickList& left = eval(e.first());
      return eval_infimum(left, eval(e.second()));
    }
    case ClockExpr::Kind::Sup: {
      const TickList& left = eval(e.first());
      return eval_supremum(left, eval(e.second()));
    }
  }
  return {};
}

TickList eval_expr(const Run& run, const ClockExpr& e, const Definitions& defs) {
  ExprEvaluator ev(run, defs);
  return ev.eval(e);
}

TickList eval_periodic_on(std::span<const Step> base, std::int64_t q) {
  if (q < 1) throw Error(ErrorCode::BadParameter, "periodicOn period must be >= 1");
  TickList out;
  for (std::size_t k = static_cast<std::size_t>(q) - 1; k < base.size(); k += static_cast<std::size_t>(q)) {
    out.push_back(base[k]);
  }
  return out;
}

TickList eval_delay_for(std::span<const Step> base, std::span<const Step> reference, std::int64_t d) {
  if (d < 0) throw Error(ErrorCode::BadParameter, "delayFor amount must be >= 0");
  if (d == 0) return TickList(base.begin(), base.end());
  TickList out;
  for (Step s : base) {
    const auto first_after = static_cast<std::size_t>(std::upper_bound(reference.begin(), reference.end(), s) -
                                                      reference.begin());
    const std::size_t target = first_after + static_cast<std::size_t>(d) - 1;
    if (target >= reference.size()) break;
    if (out.empty() || out.back() != reference[target]) out.push_back(reference[target]);
  }
  return out;
}

TickList eval_infimum(std::span<const Step> left, std::span<const Step> right) {
  const std::size_t len = std::max(left.size(), right.size());
  TickList out;
  out.reserve(len);
  for (std::size_t k = 0; k < len; ++k) {
    Step v;
    if (k >= left.size()) v = right[k];
    else if (k >= right.size()) v = left[k];
    else v = std::min(left[k], right[k]);
    if (out.empty() || out.back() != v) out.push_back(v);
  }
  return out;
}

TickList eval_supremum(std::span<const Step> left, std::span<const Step> right) {
  const std::size_t len = std::min(left.size(), right.size());
  TickList out;
  out.reserve(len);
  for (std::size_t k = 0; k < len; ++k) {
    const Step v = std::max(left[k], right[k]);
    if (out.empty() || out.back() != v) out.push_back(v);
  }
  return out;
}

}  // namespace prccsl
