#pragma once

#include <stdexcept>
#include <string>

namespace packmin {

enum class ErrorCode {
  SingularMatrix,
  NotPositiveDefinite,
  RankDeficient,
  RankOutOfRange,
  BudgetExceeded,
  UnsupportedRepresentation,
  OriginNotInterior,
  NotSymmetric,
  DimensionTooLarge,
  DimensionMismatch,
  IncompatibleKinds,
  InvalidParams,
  ParseError,
  ValidationError,
};

const char* to_string(ErrorCode code);

// Every failure surfaced by the library carries the module that raised it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& message)
      : std::runtime_error(module + ": " + to_string(code) + ": " + message),
        code_(code),
        module_(std::move(module)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorCode code_;
  std::string module_;
};

}  // namespace packmin
