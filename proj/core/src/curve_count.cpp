#include "fpdioph/curve_count.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fpdioph/error.hpp"

namespace fpdioph {
namespace {

std::uint64_t isqrt(std::uint64_t n) noexcept {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

Residue reduce_nonzero_d(std::int64_t d, const PrimeField& field) {
  const Residue r = field.reduce(d);
  if (r == 0) raise(ErrorCode::kZeroD, "D = 0 (mod " + std::to_string(field.p()) + ")");
  return r;
}

}  // namespace

QuadRep represent(const PrimeField& field) {
  const std::uint64_t p = field.p();
  if (p % 3 != 1) {
    raise(ErrorCode::kNoRepresentation, std::to_string(p) + " is not 1 mod 3");
  }
  for (std::uint64_t b = 1; 3 * b * b < p; ++b) {
    const std::uint64_t rest = p - 3 * b * b;
    const std::uint64_t a = isqrt(rest);
    if (a * a != rest) continue;
    auto signed_a = static_cast<std::int64_t>(a);
    if (signed_a % 3 != 2) signed_a = -signed_a;
    return QuadRep{signed_a, static_cast<std::int64_t>(b)};
  }
  // Unreachable for primes p = 1 (mod 3).
  raise(ErrorCode::kNoRepresentation, "search exhausted for " + std::to_string(p));
}

std::string_view to_string(ResidueClass c) noexcept {
  switch (c) {
    case ResidueClass::kSextic: return "Sextic";
    case ResidueClass::kCubicNotQuadratic: return "CubicNotQuadratic";
    case ResidueClass::kQuadraticNotCubic: return "QuadraticNotCubic";
    case ResidueClass::kNeither: return "Neither";
  }
  return "Unknown";
}

ResidueClass classify(std::int64_t d, const PrimeField& field) {
  const Residue r = reduce_nonzero_d(d, field);
  const std::uint64_t p = field.p();
  if (p % 3 != 1) {
    raise(ErrorCode::kWrongResidueClassOfP, std::to_string(p) + " is not 1 mod 3");
  }
  const bool quadratic = field.legendre(static_cast<std::int64_t>(r)) == CharValue::kResidue;
  const bool cubic = field.pow(r, (p - 1) / 3) == 1;
  if (quadratic && cubic) return ResidueClass::kSextic;
  if (cubic) return ResidueClass::kCubicNotQuadratic;
  if (quadratic) return ResidueClass::kQuadraticNotCubic;
  return ResidueClass::kNeither;
}

std::vector<std::int64_t> gauss_candidates(std::int64_t d, const PrimeField& field) {
  reduce_nonzero_d(d, field);
  const auto p1 = static_cast<std::int64_t>(field.p()) + 1;
  // p = 3 behaves like p = 2 (mod 3): cubing is a bijection of F_p.
  if (field.p() % 3 != 1) return {p1};

  const QuadRep rep = represent(field);
  const std::int64_t a = rep.a;
  const std::int64_t b3 = 3 * rep.b;
  switch (classify(d, field)) {
    case ResidueClass::kSextic: return {p1 + 2 * a};
    case ResidueClass::kCubicNotQuadratic: return {p1 - 2 * a};
    case ResidueClass::kQuadraticNotCubic: return {p1 - a + b3, p1 - a - b3};
    case ResidueClass::kNeither: return {p1 + a + b3, p1 + a - b3};
  }
  return {};
}

std::int64_t brute_point_count(std::int64_t d, const PrimeField& field) {
  const Residue rd = field.reduce(d);
  std::int64_t count = 1;  // point at infinity
  for (std::uint64_t x = 0; x < field.p(); ++x) {
    const Residue rhs = field.add(field.mul(field.mul(x, x), x), rd);
    count += 1 + field.eta(rhs);
  }
  return count;
}

CurveCount verify_gauss(std::int64_t d, const PrimeField& field) {
  CurveCount result;
  result.candidates = gauss_candidates(d, field);
  result.exact = brute_point_count(d, field);
  if (std::find(result.candidates.begin(), result.candidates.end(), result.exact) ==
      result.candidates.end()) {
    raise(ErrorCode::kGaussMismatch, "D=" + std::to_string(d) + " p=" + std::to_string(field.p()) +
                                         " exact=" + std::to_string(result.exact));
  }
  return result;
}

}  // namespace fpdioph
