#include "prccsl/sta.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "json.hpp"
#include "prccsl/error.hpp"
#include "prccsl/lexer.hpp"

namespace prccsl {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::InvalidModel, where.empty() ? what : where + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) invalid(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string get_string(const json& v, const std::string& where) {
  if (!v.is_string() || v.get<std::string>().empty()) invalid(where, "expected a non-empty string");
  return v.get<std::string>();
}

double get_number(const json& v, const std::string& where) {
  if (!v.is_number()) invalid(where, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) invalid(where, "expected a finite number");
  return d;
}

template <typename Map>
int lookup(const Map& index, const std::string& name, const std::string& where, const char* what) {
  auto it = index.find(name);
  if (it == index.end()) invalid(where, std::string("unknown ") + what + " '" + name + "'");
  return it->second;
}

class ModelParser {
 public:
  StaModel parse(const json& root) {
    if (!root.is_object()) invalid("", "model must be a JSON object");
    StaModel m;

    if (auto it = root.find("clocks"); it != root.end()) {
      if (!it->is_array()) invalid("clocks", "expected an array");
      for (const auto& c : *it) add_clock(m, get_string(c, "clocks"));
    }
    if (auto it = root.find("variables"); it != root.end()) {
      if (!it->is_object()) invalid("variables", "expected an object");
      for (const auto& [name, value] : it->items()) {
        if (!value.is_number_integer()) invalid("variables." + name, "expected an integer");
        variables_.emplace(name, static_cast<int>(m.variables.size()));
        m.variables.push_back(name);
        m.initial_values.push_back(value.get<std::int64_t>());
      }
    }
    if (auto it = root.find("channels"); it != root.end()) {
      if (!it->is_object()) invalid("channels", "expected an object");
      for (const auto& [name, events] : it->items()) {
        Channel ch{name, events_of(m, events, "channels." + name)};
        channels_.emplace(name, static_cast<int>(m.channels.size()));
        m.channels.push_back(std::move(ch));
      }
    }

    const json& automata = require(root, "automata", "");
    if (!automata.is_array() || automata.empty()) invalid("automata", "expected a non-empty array");
    std::set<std::string> names;
    for (const auto& a : automata) {
      m.automata.push_back(automaton(m, a));
      if (!names.insert(m.automata.back().name).second) {
        invalid("automata", "duplicate automaton '" + m.automata.back().name + "'");
      }
    }
    return m;
  }

 private:
  void add_clock(StaModel& m, const std::string& name) {
    if (clocks_.count(name)) invalid("clocks", "duplicate clock '" + name + "'");
    clocks_.emplace(name, static_cast<int>(m.clocks.size()));
    m.clocks.push_back(name);
  }

  std::vector<int> events_of(const StaModel&, const json& events, const std::string& where) {
    if (!events.is_array()) invalid(where, "expected an array of clock names");
    std::vector<int> out;
    for (const auto& e : events) out.push_back(lookup(clocks_, get_string(e, where), where, "clock"));
    return out;
  }

  IntExpr bind_vars(const IntExpr& e, const std::string& where) {
    return e.bind([&](IntExpr::Kind kind, const std::string& name) {
      if (kind != IntExpr::Kind::Name) invalid(where, "h() and t() are not allowed in models");
      return lookup(variables_, name, where, "variable");
    });
  }

  IntExpr guard(const std::string& text, const std::string& where) {
    try {
      return bind_vars(parse_int_expr(text), where);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InvalidModel) throw;
      invalid(where, std::string("bad guard: ") + e.what());
    }
  }

  std::vector<Assignment> update(const std::string& text, const std::string& where) {
    std::vector<Assignment> out;
    try {
      TokenStream ts(tokenize(text));
      while (!ts.at_end()) {
        Assignment a;
        a.variable = ts.expect_ident("variable");
        ts.expect_punct("=");
        a.value = parse_int_expr(ts);
        if (!ts.at_end()) ts.expect_punct(";");
        out.push_back(std::move(a));
      }
    } catch (const Error& e) {
      invalid(where, std::string("bad update: ") + e.what());
    }
    for (auto& a : out) {
      a.slot = lookup(variables_, a.variable, where, "variable");
      a.value = bind_vars(a.value, where);
    }
    return out;
  }

  Automaton automaton(StaModel& m, const json& a) {
    if (!a.is_object()) invalid("automata", "expected an object");
    Automaton out;
    out.name = get_string(require(a, "name", "automaton"), "automaton.name");
    const std::string where = "automaton " + out.name;

    std::map<std::string, int> locs;
    const json& locations = require(a, "locations", where);
    if (!locations.is_array() || locations.empty()) invalid(where, "locations must be a non-empty array");
    for (const auto& l : locations) {
      Location loc;
      loc.name = get_string(require(l, "name", where), where);
      const std::string lw = where + " location " + loc.name;
      if (auto it = l.find("invariant"); it != l.end()) {
        loc.invariant = get_number(*it, lw);
        if (*loc.invariant < 0) invalid(lw, "invariant must be >= 0");
      }
      if (auto it = l.find("rate"); it != l.end()) {
        loc.rate = get_number(*it, lw);
        if (*loc.rate <= 0) invalid(lw, "rate must be > 0");
      }
      if (!locs.emplace(loc.name, static_cast<int>(out.locations.size())).second) {
        invalid(where, "duplicate location '" + loc.name + "'");
      }
      out.locations.push_back(std::move(loc));
    }
    out.initial = lookup(locs, get_string(require(a, "initial", where), where), where, "location");

    if (auto it = a.find("edges"); it != a.end()) {
      if (!it->is_array()) invalid(where, "edges must be an array");
      for (std::size_t i = 0; i < it->size(); ++i) {
        const json& e = (*it)[i];
        const std::string ew = where + " edge " + std::to_string(i);
        if (!e.is_object()) invalid(ew, "expected an object");
        Edge edge;
        edge.from = lookup(locs, get_string(require(e, "from", ew), ew), ew, "location");
        edge.to = lookup(locs, get_string(require(e, "to", ew), ew), ew, "location");
        if (auto f = e.find("after"); f != e.end()) edge.after = get_number(*f, ew);
        if (edge.after < 0) invalid(ew, "after must be >= 0");
        if (auto f = e.find("guard"); f != e.end()) edge.guard = guard(get_string(*f, ew), ew);
        if (auto f = e.find("update"); f != e.end()) {
          edge.update_text = get_string(*f, ew);
          edge.update = update(edge.update_text, ew);
        }
        if (auto f = e.find("reset"); f != e.end()) {
          if (!f->is_boolean()) invalid(ew, "reset must be a boolean");
          edge.reset = f->get<bool>();
        }
        if (auto f = e.find("weight"); f != e.end()) edge.weight = get_number(*f, ew);
        if (!(edge.weight > 0)) invalid(ew, "weight must be > 0");
        if (auto f = e.find("emit"); f != e.end()) edge.emit = lookup(channels_, get_string(*f, ew), ew, "channel");
        if (auto f = e.find("receive"); f != e.end()) {
          edge.receive = lookup(channels_, get_string(*f, ew), ew, "channel");
        }
        if (edge.emit >= 0 && edge.receive >= 0) invalid(ew, "an edge cannot both emit and receive");
        if (auto f = e.find("events"); f != e.end()) edge.events = events_of(m, *f, ew);
        out.edges.push_back(std::move(edge));
      }
    }
    return out;
  }

  std::map<std::string, int> clocks_;
  std::map<std::string, int> variables_;
  std::map<std::string, int> channels_;
};

}  // namespace

StaModel StaModel::from_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidModel, std::string("model is not valid JSON: ") + e.what());
  }
  return ModelParser().parse(root);
}

}  // namespace prccsl
