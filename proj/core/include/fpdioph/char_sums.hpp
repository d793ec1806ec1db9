#pragma once

// Sums of the quadratic character over F_p.
//
// Each closed form has a brute-force twin (suffix _brute). The combined entry
// points evaluate both and, with Verify::kOn, throw kOracleMismatch if they
// disagree.

#include <cstdint>
#include <span>
#include <vector>

#include "fpdioph/ff_core.hpp"

namespace fpdioph {

enum class Verify { kOff, kOn };

// ---- Polynomial sums -------------------------------------------------------

// sum_{x in F_p} (ax+b / p); closed form is 0. Throws kDegenerateLinear if p | a.
std::int64_t linear_sum(std::int64_t a, std::int64_t b, const PrimeField& field,
                        Verify verify = Verify::kOn);
std::int64_t linear_sum_brute(std::int64_t a, std::int64_t b, const PrimeField& field);

// sum_{x in F_p} (ax^2+bx+c / p): (p-1)(a/p) when p | b^2-4ac, else -(a/p).
// Returns the closed form. Throws kDegenerateQuadratic if p | a.
std::int64_t quadratic_sum(std::int64_t a, std::int64_t b, std::int64_t c, const PrimeField& field,
                           Verify verify = Verify::kOn);
std::int64_t quadratic_sum_closed(std::int64_t a, std::int64_t b, std::int64_t c,
                                  const PrimeField& field);
std::int64_t quadratic_sum_brute(std::int64_t a, std::int64_t b, std::int64_t c,
                                 const PrimeField& field);

// sum_{c != 0} (c^3+1 / p): 2a-1 for p = 1 mod 3 (a from represent()), -1
// otherwise. Returns the closed form; requires p >= 5.
std::int64_t cubic_sum(const PrimeField& field, Verify verify = Verify::kOn);
std::int64_t cubic_sum_closed(const PrimeField& field);
std::int64_t cubic_sum_brute(const PrimeField& field);

// ---- Character patterns ----------------------------------------------------

struct PatternSpec {
  std::vector<std::int64_t> shifts;
  std::vector<int> signs;  // each +1 or -1
};

// Exact values are kept over the common denominator 2^k.
struct DefectReport {
  int k = 0;
  std::int64_t n_exact = 0;
  // 2^k * n_main = sum_c prod_j (1 + eps_j * eta(c + a_j)).
  std::int64_t n_main_scaled = 0;

  std::int64_t scale() const noexcept { return std::int64_t{1} << k; }
  // 2^k * A where A = n_main - n_exact.
  std::int64_t defect_scaled() const noexcept { return n_main_scaled - scale() * n_exact; }
  double n_main() const noexcept { return static_cast<double>(n_main_scaled) / scale(); }
  double defect() const noexcept { return static_cast<double>(defect_scaled()) / scale(); }
  // 0 <= A <= k/2, compared exactly.
  bool defect_in_range() const noexcept {
    return defect_scaled() >= 0 && 2 * defect_scaled() <= k * scale();
  }
};

inline constexpr int kMaxPatternLength = 30;

// Counts c with eta(c + a_j) == eps_j for every j. A shift that makes the
// character vanish never matches. Throws kDuplicateShifts (distinctness is
// mod p) or kBadPattern (length mismatch, empty, sign not +-1, k too large).
DefectReport pattern_count(const PatternSpec& spec, const PrimeField& field);

// |N - p/2^k| <= ((k-2)/2 + 1/2^k) sqrt(p) + k/2, evaluated in integers.
bool pattern_bound_check(const PatternSpec& spec, const PrimeField& field);
bool pattern_bound_holds(const DefectReport& report, std::uint64_t p);

// ---- Weil bound for the quadratic character -------------------------------

class Polynomial {
 public:
  Polynomial() = default;
  // Coefficients lowest degree first; trailing zeros are dropped.
  explicit Polynomial(std::vector<Residue> coeffs);

  static Polynomial from_integers(std::span<const std::int64_t> coeffs, const PrimeField& field);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  // Degree of the zero polynomial is reported as 0.
  int degree() const noexcept {
    return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1;
  }
  const std::vector<Residue>& coeffs() const noexcept { return coeffs_; }
  Residue operator()(Residue x, const PrimeField& field) const noexcept;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<Residue> coeffs_;
};

inline constexpr int kMaxWeilDegree = 16;

struct WeilReport {
  std::int64_t sum = 0;
  int degree = 0;
  double bound = 0.0;  // (d-1) sqrt(p)
  bool applicable = false;
  bool holds = false;  // |sum| <= bound, exact; meaningful when applicable
};

// True iff f = c * g^2 for a constant c and polynomial g over F_p.
bool is_constant_times_square(const Polynomial& f, const PrimeField& field);

// Throws kZeroPolynomial, kBadParameters for constants, kDegreeTooLarge above
// kMaxWeilDegree, kOutOfRange for unreduced coefficients.
WeilReport weil_check(const Polynomial& f, const PrimeField& field);

}  // namespace fpdioph
