#include "prccsl/relations.hpp"

#include <algorithm>

#include "prccsl/error.hpp"

namespace prccsl {

std::string_view relation_keyword(RelationKind kind) noexcept {
  switch (kind) {
    case RelationKind::Subclock: return "subclock";
    case RelationKind::Coincidence: return "coincides";
    case RelationKind::Exclusion: return "excludes";
    case RelationKind::Causality: return "causes";
    case RelationKind::Precedence: return "precedes";
  }
  return "";
}

bool check_subclock(std::span<const Step> sub, std::span<const Step> super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

bool check_coincidence(std::span<const Step> a, std::span<const Step> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

bool check_exclusion(std::span<const Step> a, std::span<const Step> b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j]) ++i;
    else ++j;
  }
  return true;
}

// The k-th effect tick raises the effect history to k+1 at the next step, so
// the cause needs its k-th tick no later. Ticks at step n are never counted.
bool check_causality(std::span<const Step> cause, std::span<const Step> effect, Step n) {
  for (std::size_t k = 0; k < effect.size() && effect[k] < n; ++k) {
    if (k >= cause.size() || cause[k] > effect[k]) return false;
  }
  return true;
}

// At the k-th tick of b the histories are (>= k, k); equality is forbidden
// there, so a's k-th tick must come strictly earlier.
bool check_precedence(std::span<const Step> a, std::span<const Step> b, Step n) {
  for (std::size_t k = 0; k < b.size() && b[k] <= n; ++k) {
    if (k >= a.size() || a[k] >= b[k]) return false;
  }
  return true;
}

bool check_relation(RelationKind kind, std::span<const Step> left, std::span<const Step> right, Step n) {
  switch (kind) {
    case RelationKind::Subclock: return check_subclock(left, right);
    case RelationKind::Coincidence: return check_coincidence(left, right);
    case RelationKind::Exclusion: return check_exclusion(left, right);
    case RelationKind::Causality: return check_causality(left, right, n);
    case RelationKind::Precedence: return check_precedence(left, right, n);
  }
  return false;
}

bool holds_on(const ProbRelation& rel, const Run& run, const Definitions& defs) {
  ExprEvaluator ev(run, defs);
  const TickList& left = ev.eval(rel.left);
  const TickList& right = ev.eval(rel.right);
  return check_relation(rel.kind, left, right, run.n());
}

EnsembleVerdict eval_prccsl(const ProbRelation& rel, std::span<const Run> runs, const Definitions& defs) {
  if (runs.empty()) throw Error(ErrorCode::EmptyEnsemble, "PrCCSL verdict over an empty ensemble");
  EnsembleVerdict v;
  v.k = runs.size();
  for (const Run& r : runs) v.m += holds_on(rel, r, defs) ? 1 : 0;
  v.ratio = Rational(v.m, v.k);
  v.holds = ratio_at_least(v.m, v.k, rel.p);
  return v;
}

}  // namespace prccsl
