#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace prccsl {

enum class ErrorCode {
  IndexOutOfRange,
  NonMonotone,
  UnknownClock,
  CyclicDefinition,
  EmptyEnsemble,
  SyntaxError,
  UndeclaredClock,
  BadParameter,
  DuplicateName,
  UnknownConstraint,
  UnknownQuery,
  InvalidModel,
  MissingRate,
  ModelDeadlock,
  GeneratorFailure,
  DegenerateDenominator,
  Io,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// Single exception type for the library; `code()` carries the failure class.
// Parse errors additionally carry a 1-based source position (0 when unknown).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, int line = 0, int column = 0)
      : std::runtime_error(message), code_(code), line_(line), column_(column) {}

  ErrorCode code() const noexcept { return code_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  ErrorCode code_;
  int line_;
  int column_;
};

}  // namespace prccsl
