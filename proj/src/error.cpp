#include "prccsl/error.hpp"

namespace prccsl {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NonMonotone: return "NonMonotone";
    case ErrorCode::UnknownClock: return "UnknownClock";
    case ErrorCode::CyclicDefinition: return "CyclicDefinition";
    case ErrorCode::EmptyEnsemble: return "EmptyEnsemble";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UndeclaredClock: return "UndeclaredClock";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnknownConstraint: return "UnknownConstraint";
    case ErrorCode::UnknownQuery: return "UnknownQuery";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::MissingRate: return "MissingRate";
    case ErrorCode::ModelDeadlock: return "ModelDeadlock";
    case ErrorCode::GeneratorFailure: return "GeneratorFailure";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace prccsl
