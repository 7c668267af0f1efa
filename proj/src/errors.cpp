#include "cartanlie/errors.hpp"

namespace cartanlie {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::CharTooSmall: return "CharTooSmall";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::NontrivialConstants: return "NontrivialConstants";
    case ErrorCode::SplitFailure: return "SplitFailure";
    case ErrorCode::SplittingFieldTooSmall: return "SplittingFieldTooSmall";
    case ErrorCode::NotInOmega: return "NotInOmega";
    case ErrorCode::NoConstantFound: return "NoConstantFound";
    case ErrorCode::ZeroWitness: return "ZeroWitness";
    case ErrorCode::LemmaViolation: return "LemmaViolation";
    case ErrorCode::NotAnIdeal: return "NotAnIdeal";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace cartanlie
