#pragma once

#include <stdexcept>
#include <string>

namespace ttlab {

enum class ErrorCode {
  InvalidConfig,
  OutOfRange,
  MalformedGraph,
  LowValence,
  OddValence,
  NonPositiveLength,
  InvalidAssignment,
  NonPositiveHeight,
  InvalidSurface,
  BadIndex,
  RadiusTooSmall,
  Disconnected,
  NonLiftable,
  BadPartition,
  NotPants,
  SearchBudgetExceeded,
  NotAbelianSquare,
  ParseError,
  ModeMismatch,
  BudgetExceeded,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ttlab
