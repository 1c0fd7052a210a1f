#include "dotvc/error.hpp"

namespace dotvc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroT: return "ZeroT";
    case ErrorCode::ZeroNormal: return "ZeroNormal";
    case ErrorCode::DuplicateIndices: return "DuplicateIndices";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::SizeOutOfRange: return "SizeOutOfRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace dotvc
