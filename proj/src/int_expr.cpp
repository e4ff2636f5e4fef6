#include "prccsl/int_expr.hpp"

#include "prccsl/error.hpp"

namespace prccsl {

namespace {

using Op = IntExpr::Op;

struct OpInfo {
  Op op;
  std::string_view token;
  int prec;
};

constexpr OpInfo kBinary[] = {
    {Op::Implies, "->", 1}, {Op::Or, "||", 2}, {Op::And, "&&", 3}, {Op::Eq, "==", 4}, {Op::Ne, "!=", 4},
    {Op::Lt, "<", 5},       {Op::Le, "<=", 5}, {Op::Gt, ">", 5},   {Op::Ge, ">=", 5}, {Op::Add, "+", 6},
    {Op::Sub, "-", 6},      {Op::Mul, "*", 7}, {Op::Div, "/", 7},  {Op::Mod, "%", 7},
};
constexpr int kUnaryPrec = 8;
constexpr int kAtomPrec = 9;

const OpInfo& info(Op op) {
  for (const auto& i : kBinary) {
    if (i.op == op) return i;
  }
  throw Error(ErrorCode::BadParameter, "not a binary operator");
}

int precedence(const IntExpr& e) {
  switch (e.kind()) {
    case IntExpr::Kind::Unary: return kUnaryPrec;
    case IntExpr::Kind::Binary: return info(e.op()).prec;
    default: return kAtomPrec;
  }
}

IntExpr parse_level(TokenStream& ts, int prec);

IntExpr parse_primary(TokenStream& ts) {
  if (ts.accept_punct("!")) return IntExpr::unary(Op::Not, parse_level(ts, kUnaryPrec));
  if (ts.accept_punct("-")) return IntExpr::unary(Op::Neg, parse_level(ts, kUnaryPrec));
  if (ts.accept_punct("(")) {
    IntExpr inner = parse_level(ts, 1);
    ts.expect_punct(")");
    return inner;
  }
  const Token& t = ts.peek();
  if (t.kind == Token::Kind::Int) return IntExpr::literal(ts.expect_int("integer"));
  if (t.kind == Token::Kind::Ident && (t.text == "h" || t.text == "t") && ts.is_punct("(", 1)) {
    const bool hist = t.text == "h";
    ts.next();
    ts.next();
    std::string clock = ts.expect_ident("clock name");
    ts.expect_punct(")");
    return hist ? IntExpr::history(std::move(clock)) : IntExpr::tick(std::move(clock));
  }
  if (t.kind == Token::Kind::Ident) return IntExpr::name(ts.expect_ident("name"));
  ts.fail("expected an expression, found '" + t.text + "'");
}

IntExpr parse_level(TokenStream& ts, int prec) {
  if (prec >= kUnaryPrec) return parse_primary(ts);
  IntExpr left = parse_level(ts, prec + 1);
  for (;;) {
    const OpInfo* match = nullptr;
    for (const auto& i : kBinary) {
      if (i.prec == prec && ts.is_punct(i.token)) match = &i;
    }
    if (!match) return left;
    ts.next();
    if (match->op == Op::Implies) return IntExpr::binary(Op::Implies, std::move(left), parse_level(ts, prec));
    left = IntExpr::binary(match->op, std::move(left), parse_level(ts, prec + 1));
  }
}

void print(const IntExpr& e, std::string& out);

void print_child(const IntExpr& child, bool parens, std::string& out) {
  if (parens) out += '(';
  print(child, out);
  if (parens) out += ')';
}

void print(const IntExpr& e, std::string& out) {
  switch (e.kind()) {
    case IntExpr::Kind::Literal: out += std::to_string(e.value()); return;
    case IntExpr::Kind::Name: out += e.text(); return;
    case IntExpr::Kind::History: out += "h(" + e.text() + ")"; return;
    case IntExpr::Kind::Tick: out += "t(" + e.text() + ")"; return;
    case IntExpr::Kind::Unary:
      out += e.op() == Op::Not ? '!' : '-';
      print_child(e.left(), precedence(e.left()) < kUnaryPrec, out);
      return;
    case IntExpr::Kind::Binary: {
      const OpInfo& i = info(e.op());
      const bool right_assoc = e.op() == Op::Implies;
      const int lp = precedence(e.left());
      const int rp = precedence(e.right());
      print_child(e.left(), lp < i.prec || (right_assoc && lp == i.prec), out);
      out += ' ';
      out += i.token;
      out += ' ';
      print_child(e.right(), rp < i.prec || (!right_assoc && rp == i.prec), out);
      return;
    }
  }
}

}  // namespace

IntExpr IntExpr::literal(std::int64_t v) {
  IntExpr e;
  e.value_ = v;
  return e;
}

IntExpr IntExpr::name(std::string n, std::int64_t value) {
  IntExpr e;
  e.kind_ = Kind::Name;
  e.text_ = std::move(n);
  e.value_ = value;
  return e;
}

IntExpr IntExpr::history(std::string clock) {
  IntExpr e;
  e.kind_ = Kind::History;
  e.text_ = std::move(clock);
  return e;
}

IntExpr IntExpr::tick(std::string clock) {
  IntExpr e = history(std::move(clock));
  e.kind_ = Kind::Tick;
  return e;
}

IntExpr IntExpr::unary(Op op, IntExpr operand) {
  IntExpr e;
  e.kind_ = Kind::Unary;
  e.op_ = op;
  e.left_ = std::make_shared<const IntExpr>(std::move(operand));
  return e;
}

IntExpr IntExpr::binary(Op op, IntExpr left, IntExpr right) {
  IntExpr e;
  e.kind_ = Kind::Binary;
  e.op_ = op;
  e.left_ = std::make_shared<const IntExpr>(std::move(left));
  e.right_ = std::make_shared<const IntExpr>(std::move(right));
  return e;
}

IntExpr IntExpr::bind(const std::function<int(Kind, const std::string&)>& resolver) const {
  IntExpr copy = *this;
  if (kind_ == Kind::Name || kind_ == Kind::History || kind_ == Kind::Tick) copy.slot_ = resolver(kind_, text_);
  if (left_) copy.left_ = std::make_shared<const IntExpr>(left_->bind(resolver));
  if (right_) copy.right_ = std::make_shared<const IntExpr>(right_->bind(resolver));
  return copy;
}

IntExpr IntExpr::with_values(const std::function<std::int64_t(const std::string&)>& lookup) const {
  IntExpr copy = *this;
  if (kind_ == Kind::Name) copy.value_ = lookup(text_);
  if (left_) copy.left_ = std::make_shared<const IntExpr>(left_->with_values(lookup));
  if (right_) copy.right_ = std::make_shared<const IntExpr>(right_->with_values(lookup));
  return copy;
}

void IntExpr::collect(Kind kind, std::set<std::string>& out) const {
  if (kind_ == kind) out.insert(text_);
  if (left_) left_->collect(kind, out);
  if (right_) right_->collect(kind, out);
}

bool operator==(const IntExpr& a, const IntExpr& b) {
  if (a.kind_ != b.kind_ || a.text_ != b.text_) return false;
  if ((a.kind_ == IntExpr::Kind::Literal || a.kind_ == IntExpr::Kind::Name) && a.value_ != b.value_) return false;
  if ((a.kind_ == IntExpr::Kind::Unary || a.kind_ == IntExpr::Kind::Binary) && a.op_ != b.op_) return false;
  auto same = [](const auto& x, const auto& y) { return (!x && !y) || (x && y && *x == *y); };
  return same(a.left_, b.left_) && same(a.right_, b.right_);
}

std::int64_t IntEnv::history(int) const { throw Error(ErrorCode::BadParameter, "h() is not available here"); }
std::int64_t IntEnv::tick(int) const { throw Error(ErrorCode::BadParameter, "t() is not available here"); }

std::int64_t evaluate(const IntExpr& e, const IntEnv& env) {
  switch (e.kind()) {
    case IntExpr::Kind::Literal: return e.value();
    case IntExpr::Kind::Name: return env.name_value(e);
    case IntExpr::Kind::History: return env.history(e.slot());
    case IntExpr::Kind::Tick: return env.tick(e.slot());
    case IntExpr::Kind::Unary: {
      const std::int64_t v = evaluate(e.left(), env);
      return e.op() == Op::Not ? (v == 0) : -v;
    }
    case IntExpr::Kind::Binary: break;
  }
  const std::int64_t a = evaluate(e.left(), env);
  switch (e.op()) {
    case Op::And: return a != 0 && evaluate(e.right(), env) != 0;
    case Op::Or: return a != 0 || evaluate(e.right(), env) != 0;
    case Op::Implies: return a == 0 || evaluate(e.right(), env) != 0;
    default: break;
  }
  const std::int64_t b = evaluate(e.right(), env);
  switch (e.op()) {
    case Op::Mul: return a * b;
    case Op::Div:
      if (b == 0) throw Error(ErrorCode::BadParameter, "division by zero");
      return a / b;
    case Op::Mod:
      if (b == 0) throw Error(ErrorCode::BadParameter, "modulo by zero");
      return a % b;
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Lt: return a < b;
    case Op::Le: return a <= b;
    case Op::Gt: return a > b;
    case Op::Ge: return a >= b;
    case Op::Eq: return a == b;
    case Op::Ne: return a != b;
    default: return 0;
  }
}

IntExpr parse_int_expr(TokenStream& ts) { return parse_level(ts, 1); }

IntExpr parse_int_expr(std::string_view text) {
  TokenStream ts(tokenize(text));
  IntExpr e = parse_int_expr(ts);
  ts.expect_end();
  return e;
}

std::string to_string(const IntExpr& e) {
  std::string out;
  print(e, out);
  return out;
}

}  // namespace prccsl
