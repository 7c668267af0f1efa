#pragma once

#include <stdexcept>
#include <string>

namespace cartanlie {

enum class ErrorCode {
  NotPrime,
  CharTooSmall,
  BoundExceeded,
  DivisionByZero,
  FieldMismatch,
  ZeroPolynomial,
  NotSquare,
  AmbientMismatch,
  IndexOutOfRange,
  ShapeMismatch,
  BadIndex,
  NotInvertible,
  BadShape,
  NontrivialConstants,
  SplitFailure,
  SplittingFieldTooSmall,
  NotInOmega,
  NoConstantFound,
  ZeroWitness,
  LemmaViolation,
  NotAnIdeal,
  SearchExhausted,
  ParseError,
  InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

/// Single exception type for the library; the code names the failed contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cartanlie
