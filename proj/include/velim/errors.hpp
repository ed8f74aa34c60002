#pragma once

#include <stdexcept>
#include <string>

namespace velim {

enum class ErrorCode {
  CycleDetected,
  DuplicateArc,
  UnknownVertex,
  PartialWeights,
  NotInternal,
  NotWeighted,
  WeightedUnsupported,
  TooLarge,
  DuplicateInSequence,
  NotTotal,
  CapExceeded,
  NotSimpleGraph,
  InvalidInstance,
  BadDegree,
  ParseError,
  ValidationError,
};

const char* error_code_name(ErrorCode code);

/// Library-wide exception. `code()` identifies the failure class so callers
/// (and the CLI) can map errors to exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace velim
