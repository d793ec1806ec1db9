#include "fpdioph/error.hpp"

namespace fpdioph {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kNotOddPrime: return "NotOddPrime";
    case ErrorCode::kModulusTooLarge: return "ModulusTooLarge";
    case ErrorCode::kZeroInverse: return "ZeroInverse";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kDegenerateLinear: return "DegenerateLinear";
    case ErrorCode::kDegenerateQuadratic: return "DegenerateQuadratic";
    case ErrorCode::kDuplicateShifts: return "DuplicateShifts";
    case ErrorCode::kBadPattern: return "BadPattern";
    case ErrorCode::kZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::kDegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::kNoRepresentation: return "NoRepresentation";
    case ErrorCode::kZeroD: return "ZeroD";
    case ErrorCode::kWrongResidueClassOfP: return "WrongResidueClassOfP";
    case ErrorCode::kGaussMismatch: return "GaussMismatch";
    case ErrorCode::kOracleMismatch: return "OracleMismatch";
    case ErrorCode::kBadTuple: return "BadTuple";
    case ErrorCode::kKTooLarge: return "KTooLarge";
    case ErrorCode::kResourceLimit: return "ResourceLimit";
    case ErrorCode::kBadParameters: return "BadParameters";
    case ErrorCode::kNoWitness: return "NoWitness";
  }
  return "Unknown";
}

void raise(ErrorCode code, const std::string& detail) {
  std::string what{to_string(code)};
  if (!detail.empty()) {
    what += ": ";
    what += detail;
  }
  throw Error(code, what);
}

}  // namespace fpdioph
