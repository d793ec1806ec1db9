#pragma once

// Arithmetic in the prime field F_p and the quadratic character on it.
//
// A PrimeField owns a bit-per-residue table of squares (0 included, so the
// table has (p+1)/2 set bits). The table is built once and shared between
// copies; the field is immutable after construction and can be handed to any
// number of worker threads.

#include <cstdint>
#include <memory>
#include <vector>

namespace fpdioph {

using Residue = std::uint64_t;

namespace modarith {

// Generic 64-bit modular arithmetic; products go through 128-bit
// intermediates so any modulus below 2^64 is safe.
constexpr Residue addmod(Residue a, Residue b, Residue m) noexcept {
  const Residue s = a + b;
  return (s < a || s >= m) ? s - m : s;
}

constexpr Residue submod(Residue a, Residue b, Residue m) noexcept {
  return a >= b ? a - b : a + (m - b);
}

constexpr Residue mulmod(Residue a, Residue b, Residue m) noexcept {
  return static_cast<Residue>(static_cast<unsigned __int128>(a) * b % m);
}

constexpr Residue powmod(Residue base, std::uint64_t exp, Residue m) noexcept {
  Residue result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace modarith

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(std::uint64_t n) noexcept;

// Smallest prime strictly greater than n (n < 2^63).
std::uint64_t next_prime(std::uint64_t n);

// Value of the quadratic character: -1, 0 or +1.
enum class CharValue : int { kNonResidue = -1, kZero = 0, kResidue = 1 };

constexpr int to_int(CharValue v) noexcept { return static_cast<int>(v); }

class PrimeField {
 public:
  // The square table costs p bits, which bounds the usable modulus.
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 32;

  std::uint64_t p() const noexcept { return p_; }

  Residue reduce(std::int64_t a) const noexcept {
    const auto m = static_cast<std::int64_t>(p_);
    const std::int64_t r = a % m;
    return static_cast<Residue>(r < 0 ? r + m : r);
  }

  Residue add(Residue a, Residue b) const noexcept { return modarith::addmod(a, b, p_); }
  Residue sub(Residue a, Residue b) const noexcept { return modarith::submod(a, b, p_); }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  // Operands are below p < 2^32, so the product fits in 64 bits.
  Residue mul(Residue a, Residue b) const noexcept { return a * b % p_; }
  Residue pow(Residue a, std::uint64_t e) const noexcept { return modarith::powmod(a, e, p_); }

  // Throws kZeroInverse when p | a.
  Residue inverse(std::int64_t a) const;

  // Euler's criterion a^((p-1)/2). Accepts any integer.
  CharValue legendre(std::int64_t a) const noexcept;

  // Table lookup with 0 counted as a square. Throws kOutOfRange for r >= p.
  bool is_square(Residue r) const;

  // Unchecked lookup for hot loops; r must already be reduced.
  bool square_at(Residue r) const noexcept {
    return ((*squares_)[r >> 6] >> (r & 63U)) & 1U;
  }

  // Table-backed character for reduced r; agrees with legendre().
  int eta(Residue r) const noexcept {
    if (r == 0) return 0;
    return square_at(r) ? 1 : -1;
  }

  // Number of residues (including 0) marked in the table.
  std::uint64_t square_count() const noexcept;

 private:
  friend PrimeField make_field(std::int64_t p);
  PrimeField(std::uint64_t p, std::shared_ptr<const std::vector<std::uint64_t>> squares)
      : p_(p), squares_(std::move(squares)) {}

  std::uint64_t p_;
  std::shared_ptr<const std::vector<std::uint64_t>> squares_;
};

// Throws kNotOddPrime unless p is an odd prime, kModulusTooLarge above
// PrimeField::kMaxModulus.
PrimeField make_field(std::int64_t p);

}  // namespace fpdioph
