#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prccsl/int_expr.hpp"

namespace prccsl {

// A location's stay is bounded by `invariant` (local clock <= value) or
// drawn from an exponential with `rate` when unbounded.
struct Location {
  std::string name;
  std::optional<double> invariant;
  std::optional<double> rate;
};

struct Assignment {
  std::string variable;
  int slot = -1;
  IntExpr value;
};

struct Edge {
  int from = 0;
  int to = 0;
  double after = 0;                // enabled once the local clock reaches this value
  std::optional<IntExpr> guard;    // over variables
  std::vector<Assignment> update;  // applied in order
  std::string update_text;
  bool reset = true;  // reset the local clock when taken
  double weight = 1;
  int emit = -1;     // broadcast channel index
  int receive = -1;  // channel index this edge synchronizes on
  std::vector<int> events;  // clock indices ticking when the edge is taken
};

struct Automaton {
  std::string name;
  std::vector<Location> locations;
  std::vector<Edge> edges;
  int initial = 0;
};

struct Channel {
  std::string name;
  std::vector<int> events;  // clock indices ticking whenever the channel fires
};

// A network of stochastic timed automata with broadcast channels and a
// global integer store. Events map to logical clocks by index into `clocks`.
struct StaModel {
  std::vector<std::string> clocks;
  std::vector<Channel> channels;
  std::vector<std::string> variables;
  std::vector<std::int64_t> initial_values;
  std::vector<Automaton> automata;

  // Parses and validates the JSON model format; throws InvalidModel.
  static StaModel from_json(std::string_view text);
};

}  // namespace prccsl
