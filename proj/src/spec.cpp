#include "prccsl/spec.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "prccsl/lexer.hpp"

namespace prccsl {

namespace {

constexpr std::size_t kClocksPerLine = 8;

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  if (ec != std::errc()) return "0";
  return std::string(buf, ptr);
}

double parse_double(TokenStream& ts, std::string_view what) {
  const Token at = ts.peek();
  const std::string text = ts.expect_number(what);
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) ts.fail_at(at, "bad number '" + text + "'");
  return v;
}

Rational parse_probability(TokenStream& ts) {
  const Token at = ts.peek();
  std::string text = ts.expect_number("probability");
  if (ts.accept_punct("/")) text += "/" + std::to_string(ts.expect_int("denominator"));
  try {
    return Rational::parse(text);
  } catch (const Error& e) {
    ts.fail_at(at, e.what());
  }
}

class LineParser {
 public:
  LineParser(TokenStream& ts, const std::map<std::string, std::int64_t>& consts) : ts_(ts), consts_(consts) {}

  Amount amount() {
    Amount a;
    if (ts_.accept_punct("(")) {
      a.terms.push_back(amount_term());
      while (ts_.accept_punct("+")) a.terms.push_back(amount_term());
      ts_.expect_punct(")");
    } else {
      a.terms.push_back(amount_term());
    }
    return a;
  }

  ClockExpr expr() {
    ClockExpr e = term();
    while (ts_.accept_word("delayFor")) {
      Amount d = amount();
      ts_.expect_word("on");
      e = ClockExpr::delay_for(std::move(e), std::move(d), term());
    }
    return e;
  }

  ClockExpr term() {
    if (ts_.accept_punct("{")) {
      ClockExpr e = expr();
      ts_.expect_punct("}");
      return e;
    }
    if (ts_.accept_punct("(")) {
      ClockExpr e = expr();
      ts_.expect_punct(")");
      return e;
    }
    if (ts_.accept_word("periodicOn")) {
      ClockExpr base = term();
      ts_.expect_word("period");
      return ClockExpr::periodic_on(std::move(base), amount());
    }
    if (ts_.is_word("inf") || ts_.is_word("sup")) {
      const bool is_inf = ts_.next().text == "inf";
      ts_.expect_punct("(");
      std::vector<ClockExpr> ops{expr()};
      while (ts_.accept_punct(",")) ops.push_back(expr());
      ts_.expect_punct(")");
      if (ops.size() < 2) ts_.fail(std::string(is_inf ? "inf" : "sup") + " needs at least two operands");
      return is_inf ? ClockExpr::inf_of(ops) : ClockExpr::sup_of(ops);
    }
    return ClockExpr::named(ts_.expect_ident("clock name"));
  }

  IntExpr predicate() { return resolve(parse_int_expr(ts_)); }

  IntExpr resolve(const IntExpr& e) const {
    return e.with_values([this](const std::string& name) -> std::int64_t {
      auto it = consts_.find(name);
      return it == consts_.end() ? 0 : it->second;
    });
  }

  MonitorRef monitor() {
    MonitorRef m;
    if (ts_.is_word("always") || ts_.is_word("eventually")) {
      m.kind = ts_.next().text == "always" ? MonitorRef::Kind::Always : MonitorRef::Kind::Eventually;
      ts_.expect_punct("(");
      m.predicate = predicate();
      ts_.expect_punct(")");
      return m;
    }
    m.label = ts_.expect_ident("constraint label or always/eventually");
    if (ts_.accept_punct(".")) m.index = ts_.expect_int("relation index");
    return m;
  }

  ConstraintBody constraint_body() {
    if (ts_.accept_word("periodic")) {
      PeriodicTemplate t{expr(), {}};
      ts_.expect_word("period");
      t.period = amount();
      return t;
    }
    if (ts_.accept_word("execution")) {
      ExecutionTemplate t;
      ts_.expect_word("from");
      t.from = expr();
      ts_.expect_word("to");
      t.to = expr();
      ts_.expect_word("within");
      ts_.expect_punct("[");
      t.lower = amount();
      ts_.expect_punct(",");
      t.upper = amount();
      ts_.expect_punct("]");
      return t;
    }
    if (ts_.accept_word("e2e")) {
      EndToEndTemplate t;
      ts_.expect_word("from");
      t.from = expr();
      ts_.expect_word("to");
      t.to = expr();
      ts_.expect_word("within");
      if (ts_.accept_punct("[")) {
        t.lower = amount();
        ts_.expect_punct(",");
        t.upper = amount();
        ts_.expect_punct("]");
      } else {
        t.upper = amount();
      }
      return t;
    }
    if (ts_.accept_word("sporadic")) {
      SporadicTemplate t;
      ts_.expect_word("from");
      t.from = expr();
      ts_.expect_word("to");
      t.to = expr();
      ts_.expect_word("min");
      t.min_gap = amount();
      return t;
    }
    if (ts_.accept_word("sync")) {
      SyncTemplate t;
      t.events.push_back(expr());
      while (ts_.accept_punct(",")) t.events.push_back(expr());
      if (t.events.size() < 2) ts_.fail("sync needs at least two events");
      ts_.expect_word("tolerance");
      t.tolerance = amount();
      return t;
    }
    if (ts_.accept_word("comparison")) {
      ComparisonTemplate t;
      ts_.expect_word("on");
      t.source = expr();
      ts_.expect_word("bound");
      t.bound = amount();
      ts_.expect_word("budget");
      t.budget = amount();
      return t;
    }
    if (ts_.accept_word("exclusion")) {
      ExclusionTemplate t;
      t.a = expr();
      ts_.expect_punct(",");
      t.b = expr();
      return t;
    }
    RelationTemplate r;
    r.left = expr();
    const Token op = ts_.peek();
    static const std::pair<const char*, RelationKind> kRelations[] = {
        {"subclock", RelationKind::Subclock},   {"coincides", RelationKind::Coincidence},
        {"excludes", RelationKind::Exclusion},  {"causes", RelationKind::Causality},
        {"precedes", RelationKind::Precedence}};
    bool found = false;
    for (const auto& [word, kind] : kRelations) {
      if (ts_.accept_word(word)) {
        r.kind = kind;
        found = true;
        break;
      }
    }
    if (!found) ts_.fail_at(op, "expected a relation (subclock|coincides|excludes|causes|precedes)");
    r.right = expr();
    return r;
  }

  std::int64_t bound() {
    ts_.expect_word("bound");
    return ts_.expect_int("time bound");
  }

  QueryBody query_body() {
    if (ts_.accept_word("hypothesis")) {
      HypothesisQuery q;
      q.monitor = monitor();
      q.bound = bound();
      for (;;) {
        if (ts_.accept_word("p0")) set_once(q.theta, parse_probability(ts_), "p0");
        else if (ts_.accept_word("alpha")) set_once(q.alpha, parse_double(ts_, "alpha"), "alpha");
        else if (ts_.accept_word("beta")) set_once(q.beta, parse_double(ts_, "beta"), "beta");
        else if (ts_.accept_word("delta")) set_once(q.delta, parse_double(ts_, "delta"), "delta");
        else break;
      }
      return q;
    }
    if (ts_.accept_word("estimate")) {
      EstimateQuery q;
      q.monitor = monitor();
      q.bound = bound();
      for (;;) {
        if (ts_.accept_word("confidence")) set_once(q.confidence, parse_double(ts_, "confidence"), "confidence");
        else if (ts_.accept_word("epsilon")) set_once(q.epsilon, parse_double(ts_, "epsilon"), "epsilon");
        else break;
      }
      return q;
    }
    if (ts_.accept_word("compare")) {
      CompareQuery q;
      q.first = monitor();
      q.bound1 = bound();
      ts_.expect_word("with");
      q.second = monitor();
      q.bound2 = bound();
      ts_.expect_word("ratio");
      q.ratio = parse_double(ts_, "ratio");
      return q;
    }
    if (ts_.accept_word("expect")) {
      ExpectQuery q;
      if (ts_.accept_word("max")) q.maximize = true;
      else if (ts_.accept_word("min")) q.maximize = false;
      else ts_.fail("expected 'max' or 'min'");
      q.observable = observable();
      q.bound = bound();
      ts_.expect_word("runs");
      q.runs = ts_.expect_int("run count");
      return q;
    }
    if (ts_.accept_word("simulate")) {
      SimulateQuery q;
      q.runs = ts_.expect_int("run count");
      q.bound = bound();
      ts_.expect_punct("{");
      q.exprs.push_back(predicate());
      while (ts_.accept_punct(",")) q.exprs.push_back(predicate());
      ts_.expect_punct("}");
      return q;
    }
    ts_.fail("expected hypothesis|estimate|compare|expect|simulate");
  }

  Observable observable() {
    Observable o;
    if (ts_.is_word("gap") && ts_.is_punct("(", 1)) {
      ts_.next();
      ts_.next();
      o.kind = Observable::Kind::Gap;
      o.from = ts_.expect_ident("clock name");
      ts_.expect_punct(")");
      return o;
    }
    if (ts_.is_word("latency") && ts_.is_punct("(", 1)) {
      ts_.next();
      ts_.next();
      o.kind = Observable::Kind::Latency;
      o.from = ts_.expect_ident("clock name");
      ts_.expect_punct(",");
      o.to = ts_.expect_ident("clock name");
      ts_.expect_punct(")");
      return o;
    }
    o.kind = Observable::Kind::Value;
    o.value = predicate();
    return o;
  }

 private:
  template <typename T>
  void set_once(std::optional<T>& slot, T value, const char* what) {
    if (slot) ts_.fail(std::string("'") + what + "' given twice");
    slot = std::move(value);
  }

  AmountTerm amount_term() {
    if (ts_.peek().kind == Token::Kind::Int) return AmountTerm{"", ts_.expect_int("amount")};
    std::string name = ts_.expect_ident("integer or constant name");
    auto it = consts_.find(name);
    return AmountTerm{name, it == consts_.end() ? 0 : it->second};
  }

  TokenStream& ts_;
  const std::map<std::string, std::int64_t>& consts_;
};

std::string print_amount(const Amount& a) {
  auto term = [](const AmountTerm& t) { return t.name.empty() ? std::to_string(t.value) : t.name; };
  if (a.terms.size() == 1) return term(a.terms.front());
  std::string out = "(";
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    if (i) out += " + ";
    out += term(a.terms[i]);
  }
  return out + ")";
}

void print_clock_expr(const ClockExpr& e, std::string& out) {
  switch (e.kind()) {
    case ClockExpr::Kind::Named:
      out += e.name();
      return;
    case ClockExpr::Kind::PeriodicOn:
      out += "{periodicOn ";
      print_clock_expr(e.first(), out);
      out += " period " + print_amount(e.amount()) + "}";
      return;
    case ClockExpr::Kind::DelayFor:
      out += "{";
      print_clock_expr(e.first(), out);
      out += " delayFor " + print_amount(e.amount()) + " on ";
      print_clock_expr(e.second(), out);
      out += "}";
      return;
    case ClockExpr::Kind::Inf:
    case ClockExpr::Kind::Sup:
      out += e.kind() == ClockExpr::Kind::Inf ? "inf(" : "sup(";
      print_clock_expr(e.first(), out);
      out += ", ";
      print_clock_expr(e.second(), out);
      out += ")";
      return;
  }
}

std::string print_observable(const Observable& o) {
  switch (o.kind) {
    case Observable::Kind::Gap: return "gap(" + o.from + ")";
    case Observable::Kind::Latency: return "latency(" + o.from + ", " + o.to + ")";
    case Observable::Kind::Value: return to_string(o.value);
  }
  return "";
}

struct Visitor {
  std::function<void(const ClockExpr&, int)> on_expr;
  std::function<void(const Amount&, int)> on_amount;
};

void visit_body(const ConstraintBody& body, int line, const Visitor& v) {
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, RelationTemplate>) {
          v.on_expr(t.left, line);
          v.on_expr(t.right, line);
        } else if constexpr (std::is_same_v<T, PeriodicTemplate>) {
          v.on_expr(t.clock, line);
          v.on_amount(t.period, line);
        } else if constexpr (std::is_same_v<T, ExecutionTemplate>) {
          v.on_expr(t.from, line);
          v.on_expr(t.to, line);
          v.on_amount(t.lower, line);
          v.on_amount(t.upper, line);
        } else if constexpr (std::is_same_v<T, EndToEndTemplate>) {
          v.on_expr(t.from, line);
          v.on_expr(t.to, line);
          if (t.lower) v.on_amount(*t.lower, line);
          v.on_amount(t.upper, line);
        } else if constexpr (std::is_same_v<T, SporadicTemplate>) {
          v.on_expr(t.from, line);
          v.on_expr(t.to, line);
          v.on_amount(t.min_gap, line);
        } else if constexpr (std::is_same_v<T, SyncTemplate>) {
          for (const auto& e : t.events) v.on_expr(e, line);
          v.on_amount(t.tolerance, line);
        } else if constexpr (std::is_same_v<T, ComparisonTemplate>) {
          v.on_expr(t.source, line);
          v.on_amount(t.bound, line);
          v.on_amount(t.budget, line);
        } else {
          v.on_expr(t.a, line);
          v.on_expr(t.b, line);
        }
      },
      body);
}

void collect_amounts(const ClockExpr& e, std::vector<const Amount*>& out) {
  if (e.kind() == ClockExpr::Kind::PeriodicOn || e.kind() == ClockExpr::Kind::DelayFor) out.push_back(&e.amount());
  if (e.kind() != ClockExpr::Kind::Named) {
    collect_amounts(e.first(), out);
    if (e.kind() != ClockExpr::Kind::PeriodicOn) collect_amounts(e.second(), out);
  }
}

ClockExpr ms() { return ClockExpr::named(kUniversalClock); }

}  // namespace

Definitions SpecFile::definitions() const {
  Definitions defs;
  for (const auto& l : lets) defs.emplace(l.name, l.expr);
  return defs;
}

const Constraint* SpecFile::find_constraint(std::string_view id) const {
  for (const auto& c : constraints) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

const Query* SpecFile::find_query(std::string_view id) const {
  for (const auto& q : queries) {
    if (q.id == id) return &q;
  }
  return nullptr;
}

bool operator==(const MonitorRef& a, const MonitorRef& b) {
  return a.kind == b.kind && a.label == b.label && a.index == b.index && a.predicate == b.predicate;
}

bool operator==(const Observable& a, const Observable& b) {
  return a.kind == b.kind && a.from == b.from && a.to == b.to && a.value == b.value;
}

bool operator==(const Query& a, const Query& b) {
  if (a.id != b.id || a.body.index() != b.body.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.body);
        if constexpr (std::is_same_v<T, HypothesisQuery>) {
          return x.monitor == y.monitor && x.bound == y.bound && x.theta == y.theta && x.alpha == y.alpha &&
                 x.beta == y.beta && x.delta == y.delta;
        } else if constexpr (std::is_same_v<T, EstimateQuery>) {
          return x.monitor == y.monitor && x.bound == y.bound && x.confidence == y.confidence &&
                 x.epsilon == y.epsilon;
        } else if constexpr (std::is_same_v<T, CompareQuery>) {
          return x.first == y.first && x.bound1 == y.bound1 && x.second == y.second && x.bound2 == y.bound2 &&
                 x.ratio == y.ratio;
        } else if constexpr (std::is_same_v<T, ExpectQuery>) {
          return x.maximize == y.maximize && x.observable == y.observable && x.bound == y.bound &&
                 x.runs == y.runs;
        } else {
          return x.runs == y.runs && x.bound == y.bound && x.exprs == y.exprs;
        }
      },
      a.body);
}

bool operator==(const Constraint& a, const Constraint& b) {
  return a.id == b.id && a.labeled == b.labeled && a.body == b.body && a.p == b.p;
}

bool operator==(const SpecFile& a, const SpecFile& b) {
  auto names_eq = [](const auto& x, const auto& y) {
    return std::equal(x.begin(), x.end(), y.begin(), y.end(),
                      [](const auto& l, const auto& r) { return l.name == r.name; });
  };
  return names_eq(a.clocks, b.clocks) &&
         std::equal(a.consts.begin(), a.consts.end(), b.consts.begin(), b.consts.end(),
                    [](const ConstDef& l, const ConstDef& r) { return l.name == r.name && l.value == r.value; }) &&
         std::equal(a.lets.begin(), a.lets.end(), b.lets.begin(), b.lets.end(),
                    [](const LetDef& l, const LetDef& r) { return l.name == r.name && l.expr == r.expr; }) &&
         a.constraints == b.constraints && a.queries == b.queries;
}

SpecFile parse_spec_syntax(std::string_view text) {
  SpecFile spec;
  std::map<std::string, std::int64_t> consts;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    TokenStream ts(tokenize(line, line_no));
    if (ts.at_end()) continue;
    LineParser p(ts, consts);

    if (ts.accept_word("clock")) {
      do {
        spec.clocks.push_back(ClockDecl{ts.expect_ident("clock name"), line_no});
      } while (ts.accept_punct(","));
    } else if (ts.accept_word("const")) {
      ConstDef c;
      c.name = ts.expect_ident("constant name");
      ts.expect_punct("=");
      c.value = ts.expect_int("non-negative integer");
      c.line = line_no;
      consts.emplace(c.name, c.value);
      spec.consts.push_back(std::move(c));
    } else if (ts.accept_word("let")) {
      LetDef l;
      l.name = ts.expect_ident("definition name");
      ts.expect_punct("=");
      l.expr = p.expr();
      l.line = line_no;
      spec.lets.push_back(std::move(l));
    } else if (ts.accept_word("query")) {
      Query q;
      q.id = ts.expect_ident("query id");
      ts.expect_punct(":");
      q.body = p.query_body();
      q.line = line_no;
      spec.queries.push_back(std::move(q));
    } else {
      Constraint c;
      c.line = line_no;
      if (ts.peek().kind == Token::Kind::Ident && !is_reserved_word(ts.peek().text) && ts.is_punct(":", 1)) {
        c.id = ts.next().text;
        c.labeled = true;
        ts.next();
      } else {
        c.id = "C" + std::to_string(spec.constraints.size() + 1);
      }
      c.body = p.constraint_body();
      if (ts.accept_word("prob")) c.p = parse_probability(ts);
      spec.constraints.push_back(std::move(c));
    }
    ts.expect_end();
  }
  return spec;
}

std::vector<Diagnostic> validate_spec(const SpecFile& spec) {
  std::vector<Diagnostic> out;
  auto report = [&](ErrorCode code, std::string message, int line) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const Diagnostic& d) {
      return d.code == code && d.line == line && d.message == message;
    });
    if (!seen) out.push_back(Diagnostic{code, std::move(message), line});
  };

  std::map<std::string, int> names;
  auto declare = [&](const std::string& name, int line, const char* what) {
    if (!names.emplace(name, line).second) {
      report(ErrorCode::DuplicateName, std::string(what) + " '" + name + "' already declared", line);
    }
  };
  for (const auto& c : spec.clocks) declare(c.name, c.line, "clock");
  for (const auto& c : spec.consts) declare(c.name, c.line, "constant");
  for (const auto& l : spec.lets) declare(l.name, l.line, "definition");

  std::set<std::string> clock_like;
  for (const auto& c : spec.clocks) clock_like.insert(c.name);
  for (const auto& l : spec.lets) clock_like.insert(l.name);
  clock_like.insert(kUniversalClock);
  std::map<std::string, std::int64_t> const_values;
  for (const auto& c : spec.consts) const_values.emplace(c.name, c.value);

  auto check_clock = [&](const std::string& name, int line) {
    if (!clock_like.count(name)) report(ErrorCode::UndeclaredClock, "undeclared clock '" + name + "'", line);
  };
  auto check_amount = [&](const Amount& a, int line, std::int64_t min_value, const char* what) {
    for (const auto& t : a.terms) {
      if (!t.name.empty()) {
        auto it = const_values.find(t.name);
        if (it == const_values.end()) {
          report(ErrorCode::BadParameter, "unknown constant '" + t.name + "'", line);
          return;
        }
      }
    }
    if (a.value() < min_value) {
      report(ErrorCode::BadParameter, std::string(what) + " must be >= " + std::to_string(min_value), line);
    }
  };
  auto check_expr = [&](const ClockExpr& e, int line) {
    std::set<std::string> refs;
    e.collect_names(refs);
    for (const auto& r : refs) check_clock(r, line);
    std::vector<const Amount*> amounts;
    collect_amounts(e, amounts);
    for (const Amount* a : amounts) check_amount(*a, line, 0, "amount");
    std::function<void(const ClockExpr&)> periods = [&](const ClockExpr& x) {
      if (x.kind() == ClockExpr::Kind::PeriodicOn) check_amount(x.amount(), line, 1, "period");
      if (x.kind() != ClockExpr::Kind::Named) {
        periods(x.first());
        if (x.kind() != ClockExpr::Kind::PeriodicOn) periods(x.second());
      }
    };
    periods(e);
  };
  auto check_int_expr = [&](const IntExpr& e, int line) {
    std::set<std::string> refs;
    e.collect(IntExpr::Kind::History, refs);
    e.collect(IntExpr::Kind::Tick, refs);
    for (const auto& r : refs) check_clock(r, line);
    std::set<std::string> consts;
    e.collect(IntExpr::Kind::Name, consts);
    for (const auto& c : consts) {
      if (!const_values.count(c)) report(ErrorCode::BadParameter, "unknown constant '" + c + "'", line);
    }
  };

  for (const auto& l : spec.lets) check_expr(l.expr, l.line);

  // Cycles among definitions.
  std::map<std::string, std::set<std::string>> edges;
  std::map<std::string, int> let_lines;
  for (const auto& l : spec.lets) {
    std::set<std::string> refs;
    l.expr.collect_names(refs);
    for (const auto& r : refs) {
      if (std::any_of(spec.lets.begin(), spec.lets.end(), [&](const LetDef& d) { return d.name == r; })) {
        edges[l.name].insert(r);
      }
    }
    let_lines.emplace(l.name, l.line);
  }
  std::map<std::string, int> color;  // 0 unvisited, 1 on stack, 2 done
  std::set<std::string> reported;
  std::function<void(const std::string&, std::vector<std::string>&)> dfs = [&](const std::string& n,
                                                                               std::vector<std::string>& stack) {
    color[n] = 1;
    stack.push_back(n);
    for (const auto& m : edges[n]) {
      if (color[m] == 1) {
        auto from = std::find(stack.begin(), stack.end(), m);
        std::string cycle;
        for (auto it = from; it != stack.end(); ++it) cycle += *it + " -> ";
        cycle += m;
        if (reported.insert(m).second) {
          report(ErrorCode::CyclicDefinition, "cyclic definition: " + cycle, let_lines[m]);
        }
      } else if (color[m] == 0) {
        dfs(m, stack);
      }
    }
    stack.pop_back();
    color[n] = 2;
  };
  for (const auto& l : spec.lets) {
    if (color[l.name] == 0) {
      std::vector<std::string> stack;
      dfs(l.name, stack);
    }
  }

  std::set<std::string> constraint_ids;
  std::map<std::string, std::size_t> relation_counts;
  for (const auto& c : spec.constraints) {
    if (!constraint_ids.insert(c.id).second) {
      report(ErrorCode::DuplicateName, "constraint '" + c.id + "' already declared", c.line);
    }
    Visitor v{check_expr, [&](const Amount& a, int line) { check_amount(a, line, 0, "bound"); }};
    visit_body(c.body, c.line, v);
    if (const auto* t = std::get_if<PeriodicTemplate>(&c.body)) check_amount(t->period, c.line, 1, "period");
    if (const auto* t = std::get_if<ExecutionTemplate>(&c.body); t && t->lower.value() > t->upper.value()) {
      report(ErrorCode::BadParameter, "lower bound exceeds upper bound", c.line);
    }
    if (const auto* t = std::get_if<EndToEndTemplate>(&c.body);
        t && t->lower && t->lower->value() > t->upper.value()) {
      report(ErrorCode::BadParameter, "lower bound exceeds upper bound", c.line);
    }
    if (c.p && *c.p > Rational(1, 1)) report(ErrorCode::BadParameter, "probability above 1", c.line);
    try {
      relation_counts[c.id] = expand_template(c.body, c.threshold()).size();
    } catch (const Error&) {
      // Already reported above; accept any relation index.
      relation_counts[c.id] = std::numeric_limits<std::size_t>::max();
    }
  }

  auto check_monitor = [&](const MonitorRef& m, int line) {
    if (m.kind != MonitorRef::Kind::Constraint) {
      check_int_expr(m.predicate, line);
      return;
    }
    auto it = relation_counts.find(m.label);
    if (it == relation_counts.end()) {
      report(ErrorCode::UnknownConstraint, "unknown constraint '" + m.label + "'", line);
    } else if (m.index && (*m.index < 1 || static_cast<std::size_t>(*m.index) > it->second)) {
      report(ErrorCode::UnknownConstraint,
             "constraint '" + m.label + "' has no relation " + std::to_string(*m.index), line);
    }
  };
  auto check_bound = [&](std::int64_t bound, int line) {
    if (bound < 1) report(ErrorCode::BadParameter, "time bound must be >= 1", line);
  };
  auto check_open_unit = [&](const std::optional<double>& v, double hi, const char* what, int line) {
    if (v && !(*v > 0.0 && *v < hi)) {
      report(ErrorCode::BadParameter, std::string(what) + " outside (0, " + format_double(hi) + ")", line);
    }
  };

  std::set<std::string> query_ids;
  for (const auto& q : spec.queries) {
    if (!query_ids.insert(q.id).second) {
      report(ErrorCode::DuplicateName, "query '" + q.id + "' already declared", q.line);
    }
    std::visit(
        [&](const auto& b) {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, HypothesisQuery>) {
            check_monitor(b.monitor, q.line);
            check_bound(b.bound, q.line);
            check_open_unit(b.alpha, 0.5, "alpha", q.line);
            check_open_unit(b.beta, 0.5, "beta", q.line);
            check_open_unit(b.delta, 0.5, "delta", q.line);
            double theta = b.theta ? b.theta->to_double() : kDefaultThreshold.to_double();
            if (!b.theta && b.monitor.kind == MonitorRef::Kind::Constraint) {
              if (const Constraint* c = spec.find_constraint(b.monitor.label)) theta = c->threshold().to_double();
            }
            const double delta = b.delta.value_or(0.01);
            if (!(theta - delta > 0.0 && theta + delta < 1.0)) {
              report(ErrorCode::BadParameter, "indifference region [p0-delta, p0+delta] must lie inside (0, 1)",
                     q.line);
            }
          } else if constexpr (std::is_same_v<T, EstimateQuery>) {
            check_monitor(b.monitor, q.line);
            check_bound(b.bound, q.line);
            check_open_unit(b.confidence, 1.0, "confidence", q.line);
            check_open_unit(b.epsilon, 1.0, "epsilon", q.line);
          } else if constexpr (std::is_same_v<T, CompareQuery>) {
            check_monitor(b.first, q.line);
            check_monitor(b.second, q.line);
            check_bound(b.bound1, q.line);
            check_bound(b.bound2, q.line);
            if (!(b.ratio > 0.0)) report(ErrorCode::BadParameter, "ratio must be > 0", q.line);
          } else if constexpr (std::is_same_v<T, ExpectQuery>) {
            if (b.observable.kind == Observable::Kind::Value) {
              check_int_expr(b.observable.value, q.line);
            } else {
              check_clock(b.observable.from, q.line);
              if (b.observable.kind == Observable::Kind::Latency) check_clock(b.observable.to, q.line);
            }
            check_bound(b.bound, q.line);
            if (b.runs < 2) report(ErrorCode::BadParameter, "expected value needs runs >= 2", q.line);
          } else {
            for (const auto& e : b.exprs) check_int_expr(e, q.line);
            check_bound(b.bound, q.line);
            if (b.runs < 1) report(ErrorCode::BadParameter, "simulate needs runs >= 1", q.line);
          }
        },
        q.body);
  }
  return out;
}

SpecFile parse_spec(std::string_view text) {
  SpecFile spec = parse_spec_syntax(text);
  auto diags = validate_spec(spec);
  if (!diags.empty()) throw Error(diags.front().code, diags.front().message, diags.front().line);
  return spec;
}

std::string print_expr(const ClockExpr& e) {
  std::string out;
  print_clock_expr(e, out);
  return out;
}

std::string print_constraint_body(const ConstraintBody& body) {
  return std::visit(
      [](const auto& t) -> std::string {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, RelationTemplate>) {
          return print_expr(t.left) + " " + std::string(relation_keyword(t.kind)) + " " + print_expr(t.right);
        } else if constexpr (std::is_same_v<T, PeriodicTemplate>) {
          return "periodic " + print_expr(t.clock) + " period " + print_amount(t.period);
        } else if constexpr (std::is_same_v<T, ExecutionTemplate>) {
          return "execution from " + print_expr(t.from) + " to " + print_expr(t.to) + " within [" +
                 print_amount(t.lower) + ", " + print_amount(t.upper) + "]";
        } else if constexpr (std::is_same_v<T, EndToEndTemplate>) {
          std::string range = t.lower ? "[" + print_amount(*t.lower) + ", " + print_amount(t.upper) + "]"
                                      : print_amount(t.upper);
          return "e2e from " + print_expr(t.from) + " to " + print_expr(t.to) + " within " + range;
        } else if constexpr (std::is_same_v<T, SporadicTemplate>) {
          return "sporadic from " + print_expr(t.from) + " to " + print_expr(t.to) + " min " +
                 print_amount(t.min_gap);
        } else if constexpr (std::is_same_v<T, SyncTemplate>) {
          std::string out = "sync ";
          for (std::size_t i = 0; i < t.events.size(); ++i) {
            if (i) out += ", ";
            out += print_expr(t.events[i]);
          }
          return out + " tolerance " + print_amount(t.tolerance);
        } else if constexpr (std::is_same_v<T, ComparisonTemplate>) {
          return "comparison on " + print_expr(t.source) + " bound " + print_amount(t.bound) + " budget " +
                 print_amount(t.budget);
        } else {
          return "exclusion " + print_expr(t.a) + ", " + print_expr(t.b);
        }
      },
      body);
}

std::string print_monitor(const MonitorRef& m) {
  switch (m.kind) {
    case MonitorRef::Kind::Always: return "always (" + to_string(m.predicate) + ")";
    case MonitorRef::Kind::Eventually: return "eventually (" + to_string(m.predicate) + ")";
    case MonitorRef::Kind::Constraint: break;
  }
  return m.index ? m.label + "." + std::to_string(*m.index) : m.label;
}

std::string print_query_body(const QueryBody& body) {
  return std::visit(
      [](const auto& b) -> std::string {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, HypothesisQuery>) {
          std::string out = "hypothesis " + print_monitor(b.monitor) + " bound " + std::to_string(b.bound);
          if (b.theta) out += " p0 " + b.theta->to_string();
          if (b.alpha) out += " alpha " + format_double(*b.alpha);
          if (b.beta) out += " beta " + format_double(*b.beta);
          if (b.delta) out += " delta " + format_double(*b.delta);
          return out;
        } else if constexpr (std::is_same_v<T, EstimateQuery>) {
          std::string out = "estimate " + print_monitor(b.monitor) + " bound " + std::to_string(b.bound);
          if (b.confidence) out += " confidence " + format_double(*b.confidence);
          if (b.epsilon) out += " epsilon " + format_double(*b.epsilon);
          return out;
        } else if constexpr (std::is_same_v<T, CompareQuery>) {
          return "compare " + print_monitor(b.first) + " bound " + std::to_string(b.bound1) + " with " +
                 print_monitor(b.second) + " bound " + std::to_string(b.bound2) + " ratio " + format_double(b.ratio);
        } else if constexpr (std::is_same_v<T, ExpectQuery>) {
          return std::string("expect ") + (b.maximize ? "max " : "min ") + print_observable(b.observable) +
                 " bound " + std::to_string(b.bound) + " runs " + std::to_string(b.runs);
        } else {
          std::string out = "simulate " + std::to_string(b.runs) + " bound " + std::to_string(b.bound) + " { ";
          for (std::size_t i = 0; i < b.exprs.size(); ++i) {
            if (i) out += ", ";
            out += to_string(b.exprs[i]);
          }
          return out + " }";
        }
      },
      body);
}

std::string print_spec(const SpecFile& spec) {
  std::string out;
  auto section = [&]() {
    if (!out.empty()) out += '\n';
  };
  if (!spec.clocks.empty()) {
    for (std::size_t i = 0; i < spec.clocks.size(); i += kClocksPerLine) {
      out += "clock ";
      for (std::size_t j = i; j < std::min(i + kClocksPerLine, spec.clocks.size()); ++j) {
        if (j > i) out += ", ";
        out += spec.clocks[j].name;
      }
      out += '\n';
    }
  }
  if (!spec.consts.empty()) {
    section();
    for (const auto& c : spec.consts) out += "const " + c.name + " = " + std::to_string(c.value) + "\n";
  }
  if (!spec.lets.empty()) {
    section();
    for (const auto& l : spec.lets) out += "let " + l.name + " = " + print_expr(l.expr) + "\n";
  }
  if (!spec.constraints.empty()) {
    section();
    for (const auto& c : spec.constraints) {
      if (c.labeled) out += c.id + ": ";
      out += print_constraint_body(c.body);
      if (c.p) out += " prob " + c.p->to_string();
      out += '\n';
    }
  }
  if (!spec.queries.empty()) {
    section();
    for (const auto& q : spec.queries) out += "query " + q.id + ": " + print_query_body(q.body) + "\n";
  }
  return out;
}

std::vector<ProbRelation> expand_template(const ConstraintBody& body, const Rational& p) {
  auto rel = [&](RelationKind kind, ClockExpr l, ClockExpr r) {
    return ProbRelation{kind, std::move(l), std::move(r), p};
  };
  auto delayed = [](const ClockExpr& base, const Amount& d) { return ClockExpr::delay_for(base, d, ms()); };
  return std::visit(
      [&](const auto& t) -> std::vector<ProbRelation> {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, RelationTemplate>) {
          return {rel(t.kind, t.left, t.right)};
        } else if constexpr (std::is_same_v<T, PeriodicTemplate>) {
          if (t.period.value() < 1) throw Error(ErrorCode::BadParameter, "period must be >= 1");
          return {rel(RelationKind::Coincidence, t.clock, ClockExpr::periodic_on(ms(), t.period))};
        } else if constexpr (std::is_same_v<T, ExecutionTemplate>) {
          if (t.lower.value() > t.upper.value()) throw Error(ErrorCode::BadParameter, "lower exceeds upper");
          return {rel(RelationKind::Causality, delayed(t.from, t.lower), t.to),
                  rel(RelationKind::Causality, t.to, delayed(t.from, t.upper))};
        } else if constexpr (std::is_same_v<T, EndToEndTemplate>) {
          std::vector<ProbRelation> out;
          if (t.lower) {
            if (t.lower->value() > t.upper.value()) throw Error(ErrorCode::BadParameter, "lower exceeds upper");
            out.push_back(rel(RelationKind::Precedence, delayed(t.from, *t.lower), t.to));
          }
          out.push_back(rel(RelationKind::Precedence, t.to, delayed(t.from, t.upper)));
          return out;
        } else if constexpr (std::is_same_v<T, SporadicTemplate>) {
          return {rel(RelationKind::Precedence, delayed(t.from, t.min_gap), t.to)};
        } else if constexpr (std::is_same_v<T, SyncTemplate>) {
          if (t.events.size() < 2) throw Error(ErrorCode::BadParameter, "sync needs at least two events");
          return {rel(RelationKind::Causality, ClockExpr::sup_of(t.events),
                      delayed(ClockExpr::inf_of(t.events), t.tolerance))};
        } else if constexpr (std::is_same_v<T, ComparisonTemplate>) {
          return {rel(RelationKind::Causality, delayed(t.source, t.bound), delayed(t.source, t.budget))};
        } else {
          return {rel(RelationKind::Exclusion, t.a, t.b)};
        }
      },
      body);
}

std::vector<ProbRelation> expand(const Constraint& c) { return expand_template(c.body, c.threshold()); }

}  // namespace prccsl
