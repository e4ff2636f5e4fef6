#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "prccsl/clock_expr.hpp"
#include "prccsl/rational.hpp"
#include "prccsl/trace.hpp"

namespace prccsl {

enum class RelationKind { Subclock, Coincidence, Exclusion, Causality, Precedence };

std::string_view relation_keyword(RelationKind kind) noexcept;

// Per-run checks over tick lists of one run with steps 0..n.
bool check_subclock(std::span<const Step> sub, std::span<const Step> super);
bool check_coincidence(std::span<const Step> a, std::span<const Step> b);
bool check_exclusion(std::span<const Step> a, std::span<const Step> b);
// History of `cause` never falls behind history of `effect` on [0, n].
bool check_causality(std::span<const Step> cause, std::span<const Step> effect, Step n);
// Strict variant: additionally `b` may not tick at a step where histories are equal.
bool check_precedence(std::span<const Step> a, std::span<const Step> b, Step n);

bool check_relation(RelationKind kind, std::span<const Step> left, std::span<const Step> right, Step n);

struct ProbRelation {
  RelationKind kind = RelationKind::Subclock;
  ClockExpr left;
  ClockExpr right;
  Rational p{95, 100};

  friend bool operator==(const ProbRelation&, const ProbRelation&) = default;
};

bool holds_on(const ProbRelation& rel, const Run& run, const Definitions& defs = {});

struct EnsembleVerdict {
  std::uint64_t m = 0;
  std::uint64_t k = 0;
  Rational ratio;
  bool holds = false;
};

// Throws EmptyEnsemble when `runs` is empty.
EnsembleVerdict eval_prccsl(const ProbRelation& rel, std::span<const Run> runs, const Definitions& defs = {});

}  // namespace prccsl
