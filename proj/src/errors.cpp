#include "ttlab/errors.hpp"

namespace ttlab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::MalformedGraph: return "MalformedGraph";
    case ErrorCode::LowValence: return "LowValence";
    case ErrorCode::OddValence: return "OddValence";
    case ErrorCode::NonPositiveLength: return "NonPositiveLength";
    case ErrorCode::InvalidAssignment: return "InvalidAssignment";
    case ErrorCode::NonPositiveHeight: return "NonPositiveHeight";
    case ErrorCode::InvalidSurface: return "InvalidSurface";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::RadiusTooSmall: return "RadiusTooSmall";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NonLiftable: return "NonLiftable";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::NotPants: return "NotPants";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::NotAbelianSquare: return "NotAbelianSquare";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

}  // namespace ttlab
