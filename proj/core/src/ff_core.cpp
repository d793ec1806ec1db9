#include "fpdioph/ff_core.hpp"

#include <array>
#include <bit>
#include <string>

#include "fpdioph/error.hpp"

namespace fpdioph {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  constexpr std::array<std::uint64_t, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (const auto q : kBases) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  const int s = std::countr_zero(d);
  d >>= s;
  for (const auto a : kBases) {
    std::uint64_t x = modarith::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = modarith::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  if (n >= (std::uint64_t{1} << 63)) raise(ErrorCode::kOutOfRange, "next_prime argument too large");
  std::uint64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

PrimeField make_field(std::int64_t p) {
  if (p < 3 || p % 2 == 0 || !is_prime(static_cast<std::uint64_t>(p))) {
    raise(ErrorCode::kNotOddPrime, std::to_string(p) + " is not an odd prime");
  }
  const auto up = static_cast<std::uint64_t>(p);
  if (up >= PrimeField::kMaxModulus) {
    raise(ErrorCode::kModulusTooLarge, std::to_string(p) + " exceeds the square-table limit");
  }

  auto bits = std::make_shared<std::vector<std::uint64_t>>((up + 63) / 64, 0);
  // (r+1)^2 = r^2 + 2r + 1: walk the squares additively for r = 0..(p-1)/2.
  std::uint64_t sq = 0;
  for (std::uint64_t r = 0; r <= up / 2; ++r) {
    (*bits)[sq >> 6] |= std::uint64_t{1} << (sq & 63U);
    sq = modarith::addmod(sq, (2 * r + 1) % up, up);
  }
  return PrimeField(up, std::move(bits));
}

Residue PrimeField::inverse(std::int64_t a) const {
  const Residue r = reduce(a);
  if (r == 0) raise(ErrorCode::kZeroInverse, std::to_string(a) + " mod " + std::to_string(p_));
  return pow(r, p_ - 2);
}

CharValue PrimeField::legendre(std::int64_t a) const noexcept {
  const Residue r = reduce(a);
  if (r == 0) return CharValue::kZero;
  return pow(r, (p_ - 1) / 2) == 1 ? CharValue::kResidue : CharValue::kNonResidue;
}

bool PrimeField::is_square(Residue r) const {
  if (r >= p_) {
    raise(ErrorCode::kOutOfRange, std::to_string(r) + " >= " + std::to_string(p_));
  }
  return square_at(r);
}

std::uint64_t PrimeField::square_count() const noexcept {
  std::uint64_t n = 0;
  for (const auto w : *squares_) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

}  // namespace fpdioph
