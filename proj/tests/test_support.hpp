#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "prccsl/trace.hpp"

namespace prccsl::testing {

// Random strictly increasing tick list over steps 0..n.
inline TickList random_ticks(std::mt19937_64& rng, Step n, double density = 0.4) {
  std::bernoulli_distribution tick(density);
  TickList out;
  for (Step i = 0; i <= n; ++i) {
    if (tick(rng)) out.push_back(i);
  }
  return out;
}

// Tick list encoded by the low n+1 bits of `mask` (bit i: tick at step i).
inline TickList ticks_from_mask(std::uint32_t mask, Step n) {
  TickList out;
  for (Step i = 0; i <= n; ++i) {
    if (mask & (1u << i)) out.push_back(i);
  }
  return out;
}

inline Run two_clock_run(const TickList& a, const TickList& b, Step n) {
  return build_run({{ClockId("a"), a}, {ClockId("b"), b}}, n);
}

}  // namespace prccsl::testing
