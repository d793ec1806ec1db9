#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fpdioph {

enum class ErrorCode {
  kNotOddPrime,
  kModulusTooLarge,
  kZeroInverse,
  kOutOfRange,
  kDegenerateLinear,
  kDegenerateQuadratic,
  kDuplicateShifts,
  kBadPattern,
  kZeroPolynomial,
  kDegreeTooLarge,
  kNoRepresentation,
  kZeroD,
  kWrongResidueClassOfP,
  kGaussMismatch,
  kOracleMismatch,
  kBadTuple,
  kKTooLarge,
  kResourceLimit,
  kBadParameters,
  kNoWitness,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (and the CLI exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& detail);

}  // namespace fpdioph
