#pragma once

// Point counts of y^2 = x^3 + D over F_p, exhaustively and from Gauss's
// case split on the sextic class of D.

#include <cstdint>
#include <string_view>
#include <vector>

#include "fpdioph/ff_core.hpp"

namespace fpdioph {

// p = a^2 + 3 b^2 with b > 0 and a = 2 (mod 3).
struct QuadRep {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend bool operator==(const QuadRep&, const QuadRep&) = default;
};

// O(sqrt p) trial over b. Throws kNoRepresentation unless p = 1 (mod 3).
QuadRep represent(const PrimeField& field);

enum class ResidueClass { kSextic, kCubicNotQuadratic, kQuadraticNotCubic, kNeither };

std::string_view to_string(ResidueClass c) noexcept;

// Requires p = 1 (mod 3) and D != 0 (mod p).
ResidueClass classify(std::int64_t d, const PrimeField& field);

// One candidate for p != 1 (mod 3) and for the first two classes; two for the
// last two classes, where the sign of the 3b term is not determined.
// Candidates are listed +3b first.
std::vector<std::int64_t> gauss_candidates(std::int64_t d, const PrimeField& field);

// Projective count, point at infinity included. D = 0 is allowed here.
std::int64_t brute_point_count(std::int64_t d, const PrimeField& field);

struct CurveCount {
  std::int64_t exact = 0;
  std::vector<std::int64_t> candidates;
};

// Throws kGaussMismatch if the exact count is not among the candidates.
CurveCount verify_gauss(std::int64_t d, const PrimeField& field);

}  // namespace fpdioph
