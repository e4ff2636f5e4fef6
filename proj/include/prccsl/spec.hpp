#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "prccsl/clock_expr.hpp"
#include "prccsl/error.hpp"
#include "prccsl/int_expr.hpp"
#include "prccsl/rational.hpp"
#include "prccsl/relations.hpp"

namespace prccsl {

inline const Rational kDefaultThreshold{95, 100};

// `line` fields record the source position for diagnostics only; AST
// equality ignores them.

struct ClockDecl {
  std::string name;
  int line = 0;
};

struct ConstDef {
  std::string name;
  std::int64_t value = 0;
  int line = 0;
};

struct LetDef {
  std::string name;
  ClockExpr expr;
  int line = 0;
};

struct RelationTemplate {
  RelationKind kind = RelationKind::Subclock;
  ClockExpr left;
  ClockExpr right;
  friend bool operator==(const RelationTemplate&, const RelationTemplate&) = default;
};

struct PeriodicTemplate {
  ClockExpr clock;
  Amount period;
  friend bool operator==(const PeriodicTemplate&, const PeriodicTemplate&) = default;
};

struct ExecutionTemplate {
  ClockExpr from;
  ClockExpr to;
  Amount lower;
  Amount upper;
  friend bool operator==(const ExecutionTemplate&, const ExecutionTemplate&) = default;
};

struct EndToEndTemplate {
  ClockExpr from;
  ClockExpr to;
  std::optional<Amount> lower;
  Amount upper;
  friend bool operator==(const EndToEndTemplate&, const EndToEndTemplate&) = default;
};

struct SporadicTemplate {
  ClockExpr from;
  ClockExpr to;
  Amount min_gap;
  friend bool operator==(const SporadicTemplate&, const SporadicTemplate&) = default;
};

struct SyncTemplate {
  std::vector<ClockExpr> events;
  Amount tolerance;
  friend bool operator==(const SyncTemplate&, const SyncTemplate&) = default;
};

struct ComparisonTemplate {
  ClockExpr source;
  Amount bound;
  Amount budget;
  friend bool operator==(const ComparisonTemplate&, const ComparisonTemplate&) = default;
};

struct ExclusionTemplate {
  ClockExpr a;
  ClockExpr b;
  friend bool operator==(const ExclusionTemplate&, const ExclusionTemplate&) = default;
};

using ConstraintBody = std::variant<RelationTemplate, PeriodicTemplate, ExecutionTemplate, EndToEndTemplate,
                                    SporadicTemplate, SyncTemplate, ComparisonTemplate, ExclusionTemplate>;

struct Constraint {
  std::string id;
  bool labeled = false;  // unlabeled constraints get ids C1, C2, ... by position
  ConstraintBody body;
  std::optional<Rational> p;  // absent: kDefaultThreshold
  int line = 0;

  Rational threshold() const { return p.value_or(kDefaultThreshold); }
};

struct MonitorRef {
  enum class Kind { Constraint, Always, Eventually };
  Kind kind = Kind::Constraint;
  std::string label;
  std::optional<std::int64_t> index;  // 1-based relation of an expanded template
  IntExpr predicate;
};

struct HypothesisQuery {
  MonitorRef monitor;
  std::int64_t bound = 0;
  std::optional<Rational> theta;
  std::optional<double> alpha, beta, delta;
};

struct EstimateQuery {
  MonitorRef monitor;
  std::int64_t bound = 0;
  std::optional<double> confidence, epsilon;
};

struct CompareQuery {
  MonitorRef first;
  std::int64_t bound1 = 0;
  MonitorRef second;
  std::int64_t bound2 = 0;
  double ratio = 1.0;
};

struct Observable {
  enum class Kind { Gap, Latency, Value };
  Kind kind = Kind::Value;
  std::string from;  // clock for Gap, source for Latency
  std::string to;    // target for Latency
  IntExpr value;
};

struct ExpectQuery {
  bool maximize = true;
  Observable observable;
  std::int64_t bound = 0;
  std::int64_t runs = 0;
};

struct SimulateQuery {
  std::int64_t runs = 0;
  std::int64_t bound = 0;
  std::vector<IntExpr> exprs;
};

using QueryBody = std::variant<HypothesisQuery, EstimateQuery, CompareQuery, ExpectQuery, SimulateQuery>;

struct Query {
  std::string id;
  QueryBody body;
  int line = 0;
};

struct SpecFile {
  std::vector<ClockDecl> clocks;
  std::vector<ConstDef> consts;
  std::vector<LetDef> lets;
  std::vector<Constraint> constraints;
  std::vector<Query> queries;

  Definitions definitions() const;
  const Constraint* find_constraint(std::string_view id) const;
  const Query* find_query(std::string_view id) const;
};

bool operator==(const MonitorRef& a, const MonitorRef& b);
bool operator==(const Observable& a, const Observable& b);
bool operator==(const Query& a, const Query& b);
bool operator==(const Constraint& a, const Constraint& b);
bool operator==(const SpecFile& a, const SpecFile& b);

struct Diagnostic {
  ErrorCode code;
  std::string message;
  int line = 0;
};

// Syntax only; throws SyntaxError with line/column.
SpecFile parse_spec_syntax(std::string_view text);
std::vector<Diagnostic> validate_spec(const SpecFile& spec);
// Syntax plus validation; throws the first diagnostic as an Error.
SpecFile parse_spec(std::string_view text);

std::string print_spec(const SpecFile& spec);
std::string print_expr(const ClockExpr& e);
std::string print_constraint_body(const ConstraintBody& body);
std::string print_query_body(const QueryBody& body);
std::string print_monitor(const MonitorRef& m);

std::vector<ProbRelation> expand_template(const ConstraintBody& body, const Rational& p);
std::vector<ProbRelation> expand(const Constraint& c);

}  // namespace prccsl
