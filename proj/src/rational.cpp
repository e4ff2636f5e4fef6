#include "prccsl/rational.hpp"

#include <algorithm>
#include <numeric>

#include "prccsl/error.hpp"

namespace prccsl {

namespace {

std::uint64_t parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty() || digits.size() > 18) {
    throw Error(ErrorCode::BadParameter, "bad rational '" + std::string(whole) + "'");
  }
  std::uint64_t v = 0;
  for (char ch : digits) {
    if (ch < '0' || ch > '9') {
      throw Error(ErrorCode::BadParameter, "bad rational '" + std::string(whole) + "'");
    }
    v = v * 10 + static_cast<std::uint64_t>(ch - '0');
  }
  return v;
}

}  // namespace

Rational::Rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw Error(ErrorCode::BadParameter, "rational with zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_digits(text.substr(0, slash), text), parse_digits(text.substr(slash + 1), text));
  }
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(parse_digits(text, text), 1);
  const std::string_view int_part = text.substr(0, dot);
  const std::string_view frac_part = text.substr(dot + 1);
  if (int_part.size() + frac_part.size() > 18 || frac_part.empty()) {
    throw Error(ErrorCode::BadParameter, "bad rational '" + std::string(text) + "'");
  }
  std::uint64_t den = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
  const std::uint64_t whole = int_part.empty() ? 0 : parse_digits(int_part, text);
  return Rational(whole * den + parse_digits(frac_part, text), den);
}

std::string Rational::to_string() const {
  std::uint64_t d = den_;
  int twos = 0;
  int fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
  const int digits = std::max(twos, fives);
  if (digits == 0) return std::to_string(num_);
  if (digits > 18) return std::to_string(num_) + "/" + std::to_string(den_);
  std::uint64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const unsigned __int128 scaled = static_cast<unsigned __int128>(num_) * (scale / den_);
  const auto whole = static_cast<std::uint64_t>(scaled / scale);
  std::string frac = std::to_string(static_cast<std::uint64_t>(scaled % scale));
  frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  return std::to_string(whole) + "." + frac;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const unsigned __int128 lhs = static_cast<unsigned __int128>(a.num_) * b.den_;
  const unsigned __int128 rhs = static_cast<unsigned __int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool ratio_at_least(std::uint64_t m, std::uint64_t k, const Rational& p) {
  if (k == 0) throw Error(ErrorCode::EmptyEnsemble, "ratio over zero runs");
  return static_cast<unsigned __int128>(m) * p.den() >= static_cast<unsigned __int128>(p.num()) * k;
}

}  // namespace prccsl
