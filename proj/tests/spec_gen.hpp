#pragma once

#include <cstdint>
#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace prccsl::testing {

// Generates well-formed spec text over random clocks, constants,
// definitions, templates and queries.
class SpecGen {
 public:
  explicit SpecGen(std::uint64_t seed) : rng_(seed) {}

  std::string operator()() {
    std::ostringstream out;
    clocks_.clear();
    consts_.clear();
    lets_.clear();
    const int nclocks = pick(2, 10);
    for (int i = 0; i < nclocks; ++i) clocks_.push_back("c" + std::to_string(i));
    for (int i = 0; i < nclocks;) {
      const int take = std::min(nclocks - i, pick(1, 4));
      out << "clock ";
      for (int j = 0; j < take; ++j) out << (j ? ", " : "") << clocks_[i + j];
      out << "\n";
      i += take;
    }
    const int nconsts = pick(0, 3);
    for (int i = 0; i < nconsts; ++i) {
      consts_.push_back("K" + std::to_string(i));
      out << "const " << consts_.back() << " = " << pick(1, 400) << "\n";
    }
    const int nlets = pick(0, 3);
    for (int i = 0; i < nlets; ++i) {
      const std::string e = expr(2);
      lets_.push_back("d" + std::to_string(i));
      out << "let " << lets_.back() << " = " << e << "\n";
    }
    const int ncons = pick(1, 8);
    std::vector<std::string> labels;
    for (int i = 0; i < ncons; ++i) {
      if (coin()) {
        labels.push_back("L" + std::to_string(i));
        out << labels.back() << ": ";
      }
      out << constraint();
      if (coin()) out << " prob " << prob();
      out << "\n";
    }
    if (labels.empty()) {
      labels.push_back("Lx");
      out << "Lx: " << clock() << " causes " << clock() << "\n";
    }
    const int nqueries = pick(0, 6);
    for (int i = 0; i < nqueries; ++i) out << "query Q" << i << ": " << query(labels) << "\n";
    return out.str();
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return pick(0, 1) == 1; }
  template <typename T>
  const T& any(const std::vector<T>& v) { return v[static_cast<std::size_t>(pick(0, static_cast<int>(v.size()) - 1))]; }

  std::string clock() { return any(clocks_); }
  std::string clock_like() {
    const int r = pick(0, 9);
    if (r == 0) return "ms";
    if (r <= 2 && !lets_.empty()) return any(lets_);
    return clock();
  }
  std::string amount(int min_value) {
    auto term = [&] {
      if (!consts_.empty() && coin()) return any(consts_);
      return std::to_string(pick(min_value, 600));
    };
    if (pick(0, 3) == 0) {
      std::string s = "(" + term();
      for (int n = pick(1, 2); n > 0; --n) s += " + " + term();
      return s + ")";
    }
    return term();
  }
  std::string expr(int depth) {
    if (depth == 0) return clock_like();
    switch (pick(0, 5)) {
      case 0: return "{" + expr(depth - 1) + " delayFor " + amount(0) + " on " + expr(depth - 1) + "}";
      case 1: return "{periodicOn " + expr(depth - 1) + " period " + amount(1) + "}";
      case 2:
      case 3: {
        std::string s = coin() ? "inf(" : "sup(";
        s += expr(depth - 1);
        for (int n = pick(1, 3); n > 0; --n) s += ", " + expr(depth - 1);
        return s + ")";
      }
      default: return clock_like();
    }
  }
  std::string prob() {
    static const std::vector<std::string> kProbs{"0.9", "0.95", "19/20", "0.5", "1/3", "0.999"};
    return any(kProbs);
  }
  std::string constraint() {
    static const std::vector<std::string> kRel{"subclock", "coincides", "excludes", "causes", "precedes"};
    switch (pick(0, 7)) {
      case 0: return "periodic " + expr(1) + " period " + amount(1);
      case 1: {
        const int lo = pick(0, 100);
        return "execution from " + expr(1) + " to " + expr(1) + " within [" + std::to_string(lo) + ", " +
               std::to_string(lo + pick(0, 100)) + "]";
      }
      case 2: {
        if (coin()) return "e2e from " + expr(1) + " to " + expr(1) + " within " + amount(0);
        const int lo = pick(0, 100);
        return "e2e from " + expr(1) + " to " + expr(1) + " within [" + std::to_string(lo) + ", " +
               std::to_string(lo + pick(0, 100)) + "]";
      }
      case 3: return "sporadic from " + expr(1) + " to " + expr(1) + " min " + amount(0);
      case 4: {
        std::string s = "sync " + expr(1);
        for (int n = pick(1, 4); n > 0; --n) s += ", " + expr(1);
        return s + " tolerance " + amount(0);
      }
      case 5: return "comparison on " + expr(1) + " bound " + amount(0) + " budget " + amount(0);
      case 6: return "exclusion " + expr(1) + ", " + expr(1);
      default: return expr(2) + " " + any(kRel) + " " + expr(2);
    }
  }
  std::string int_expr(int depth) {
    if (depth == 0) {
      switch (pick(0, 3)) {
        case 0: return "h(" + clock_like() + ")";
        case 1: return "t(" + clock_like() + ")";
        case 2:
          if (!consts_.empty()) return any(consts_);
          [[fallthrough]];
        default: return std::to_string(pick(0, 50));
      }
    }
    static const std::vector<std::string> kOps{"+", "-", "*", "/", "%", "<", "<=", ">", ">=", "==", "!=", "&&", "||", "->"};
    switch (pick(0, 4)) {
      case 0: return "!" + int_expr(depth - 1);
      case 1: return "-" + int_expr(depth - 1);
      case 2: return "(" + int_expr(depth - 1) + " " + any(kOps) + " " + int_expr(depth - 1) + ")";
      default: return int_expr(depth - 1) + " " + any(kOps) + " " + int_expr(depth - 1);
    }
  }
  std::string monitor(const std::vector<std::string>& labels) {
    switch (pick(0, 3)) {
      case 0: return "always (" + int_expr(2) + ")";
      case 1: return "eventually (" + int_expr(2) + ")";
      case 2: return any(labels) + ".1";
      default: return any(labels);
    }
  }
  std::string bound() { return " bound " + std::to_string(pick(1, 5000)); }
  std::string query(const std::vector<std::string>& labels) {
    switch (pick(0, 4)) {
      case 0: {
        std::string s = "hypothesis " + monitor(labels) + bound() + " p0 " + (coin() ? "0.9" : "0.5");
        if (coin()) s += " alpha 0.01";
        if (coin()) s += " beta 0.1";
        if (coin()) s += " delta 0.05";
        return s;
      }
      case 1: {
        std::string s = "estimate " + monitor(labels) + bound();
        if (coin()) s += " confidence 0.99";
        if (coin()) s += " epsilon 0.02";
        return s;
      }
      case 2:
        return "compare " + monitor(labels) + bound() + " with " + monitor(labels) + bound() + " ratio " +
               (coin() ? "1.1" : "2.25");
      case 3: {
        std::string obs;
        switch (pick(0, 2)) {
          case 0: obs = "gap(" + clock() + ")"; break;
          case 1: obs = "latency(" + clock() + ", " + clock() + ")"; break;
          default: obs = int_expr(2);
        }
        return std::string("expect ") + (coin() ? "max " : "min ") + obs + bound() + " runs " +
               std::to_string(pick(2, 600));
      }
      default: {
        std::string s = "simulate " + std::to_string(pick(1, 5)) + bound() + " { " + int_expr(2);
        for (int n = pick(0, 3); n > 0; --n) s += ", " + int_expr(2);
        return s + " }";
      }
    }
  }

  std::mt19937_64 rng_;
  std::vector<std::string> clocks_, consts_, lets_;
};

}  // namespace prccsl::testing
