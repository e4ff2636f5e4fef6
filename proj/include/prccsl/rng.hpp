#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace prccsl {

// One SplitMix64 output step (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed of run j's private stream: SplitMix64(master ^ SplitMix64(j)).
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t j) noexcept {
  return splitmix64(master ^ splitmix64(j));
}

// mt19937_64 with the sampling transforms spelled out so that draws do not
// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng for_stream(std::uint64_t master, std::uint64_t j) { return Rng(stream_seed(master, j)); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

  bool bernoulli(double p) { return uniform01() < p; }

  // Index drawn with probability proportional to weights (all >= 0, sum > 0).
  std::size_t weighted(std::span<const double> weights) {
    double total = 0;
    for (double w : weights) total += w;
    double x = uniform01() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (x < weights[i]) return i;
      x -= weights[i];
    }
    for (std::size_t i = weights.size(); i-- > 0;) {
      if (weights[i] > 0) return i;
    }
    return 0;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace prccsl
