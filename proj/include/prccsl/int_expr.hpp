#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "prccsl/lexer.hpp"

namespace prccsl {

// Integer/boolean expressions used for monitor predicates (over clock
// histories `h(x)` and tick indicators `t(x)`) and for model guards and
// updates (over variables). Booleans are 0/1.
class IntExpr {
 public:
  enum class Kind { Literal, Name, History, Tick, Unary, Binary };
  enum class Op { Not, Neg, Mul, Div, Mod, Add, Sub, Lt, Le, Gt, Ge, Eq, Ne, And, Or, Implies };

  IntExpr() = default;

  static IntExpr literal(std::int64_t v);
  // A named constant (spec) or variable (model); `slot` is bound later.
  static IntExpr name(std::string n, std::int64_t value = 0);
  static IntExpr history(std::string clock);
  static IntExpr tick(std::string clock);
  static IntExpr unary(Op op, IntExpr operand);
  static IntExpr binary(Op op, IntExpr left, IntExpr right);

  Kind kind() const noexcept { return kind_; }
  Op op() const noexcept { return op_; }
  std::int64_t value() const noexcept { return value_; }
  const std::string& text() const noexcept { return text_; }
  int slot() const noexcept { return slot_; }
  const IntExpr& left() const { return *left_; }
  const IntExpr& right() const { return *right_; }

  // Copy with `slot` assigned on every Name/History/Tick node.
  IntExpr bind(const std::function<int(Kind, const std::string&)>& resolver) const;
  // Copy with Name nodes carrying the given values (for named constants).
  IntExpr with_values(const std::function<std::int64_t(const std::string&)>& lookup) const;

  void collect(Kind kind, std::set<std::string>& out) const;

  // Equality ignores bound slots.
  friend bool operator==(const IntExpr& a, const IntExpr& b);

 private:
  Kind kind_ = Kind::Literal;
  Op op_ = Op::Add;
  std::int64_t value_ = 0;
  std::string text_;
  int slot_ = -1;
  std::shared_ptr<const IntExpr> left_;
  std::shared_ptr<const IntExpr> right_;
};

// Values of bound slots at the point of evaluation.
class IntEnv {
 public:
  virtual ~IntEnv() = default;
  virtual std::int64_t name_value(const IntExpr& node) const { return node.value(); }
  virtual std::int64_t history(int slot) const;
  virtual std::int64_t tick(int slot) const;
};

// Throws BadParameter on division by zero.
std::int64_t evaluate(const IntExpr& e, const IntEnv& env);

IntExpr parse_int_expr(TokenStream& ts);
// Parses a whole string; throws SyntaxError.
IntExpr parse_int_expr(std::string_view text);

std::string to_string(const IntExpr& e);

}  // namespace prccsl
