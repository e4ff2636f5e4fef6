#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace prccsl {

// Exact non-negative rational, always stored reduced. Used for probability
// thresholds so that m/k >= p never goes through floating point.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::uint64_t num, std::uint64_t den);

  // Accepts "1", "0.95", "19/20".
  static Rational parse(std::string_view text);

  std::uint64_t num() const noexcept { return num_; }
  std::uint64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  // Decimal when the denominator divides a power of ten, "a/b" otherwise.
  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

// m/k >= p, exact.
bool ratio_at_least(std::uint64_t m, std::uint64_t k, const Rational& p);

}  // namespace prccsl
