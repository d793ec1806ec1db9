#include "fpdioph/char_sums.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "fpdioph/curve_count.hpp"
#include "fpdioph/error.hpp"

namespace fpdioph {
namespace {

void check_agreement(std::int64_t closed, std::int64_t brute, const char* what, std::uint64_t p) {
  if (closed != brute) {
    raise(ErrorCode::kOracleMismatch, std::string(what) + " at p=" + std::to_string(p) +
                                          ": closed form " + std::to_string(closed) +
                                          " vs brute force " + std::to_string(brute));
  }
}

}  // namespace

std::int64_t linear_sum_brute(std::int64_t a, std::int64_t b, const PrimeField& field) {
  const Residue step = field.reduce(a);
  Residue value = field.reduce(b);
  std::int64_t sum = 0;
  for (std::uint64_t x = 0; x < field.p(); ++x) {
    sum += field.eta(value);
    value = field.add(value, step);
  }
  return sum;
}

std::int64_t linear_sum(std::int64_t a, std::int64_t b, const PrimeField& field, Verify verify) {
  if (field.reduce(a) == 0) raise(ErrorCode::kDegenerateLinear, "p divides the leading coefficient");
  const std::int64_t brute = linear_sum_brute(a, b, field);
  if (verify == Verify::kOn) check_agreement(0, brute, "linear character sum", field.p());
  return brute;
}

std::int64_t quadratic_sum_brute(std::int64_t a, std::int64_t b, std::int64_t c,
                                 const PrimeField& field) {
  // f(x+1) - f(x) = 2ax + a + b, so both the value and its difference
  // advance by addition.
  const Residue ra = field.reduce(a);
  const Residue two_a = field.add(ra, ra);
  Residue value = field.reduce(c);
  Residue diff = field.add(ra, field.reduce(b));
  std::int64_t sum = 0;
  for (std::uint64_t x = 0; x < field.p(); ++x) {
    sum += field.eta(value);
    value = field.add(value, diff);
    diff = field.add(diff, two_a);
  }
  return sum;
}

std::int64_t quadratic_sum_closed(std::int64_t a, std::int64_t b, std::int64_t c,
                                  const PrimeField& field) {
  const Residue ra = field.reduce(a);
  if (ra == 0) raise(ErrorCode::kDegenerateQuadratic, "p divides the leading coefficient");
  const Residue rb = field.reduce(b);
  const Residue rc = field.reduce(c);
  const Residue disc = field.sub(field.mul(rb, rb), field.mul(4 % field.p(), field.mul(ra, rc)));
  const int chi_a = to_int(field.legendre(static_cast<std::int64_t>(ra)));
  if (disc == 0) return static_cast<std::int64_t>(field.p() - 1) * chi_a;
  return -chi_a;
}

std::int64_t quadratic_sum(std::int64_t a, std::int64_t b, std::int64_t c, const PrimeField& field,
                           Verify verify) {
  const std::int64_t closed = quadratic_sum_closed(a, b, c, field);
  if (verify == Verify::kOn) {
    check_agreement(closed, quadratic_sum_brute(a, b, c, field), "quadratic character sum",
                    field.p());
  }
  return closed;
}

std::int64_t cubic_sum_brute(const PrimeField& field) {
  std::int64_t sum = 0;
  for (std::uint64_t c = 1; c < field.p(); ++c) {
    sum += field.eta(field.add(field.mul(field.mul(c, c), c), 1));
  }
  return sum;
}

std::int64_t cubic_sum_closed(const PrimeField& field) {
  if (field.p() < 5) raise(ErrorCode::kBadParameters, "cubic sum needs p >= 5");
  if (field.p() % 3 != 1) return -1;
  return 2 * represent(field).a - 1;
}

std::int64_t cubic_sum(const PrimeField& field, Verify verify) {
  const std::int64_t closed = cubic_sum_closed(field);
  if (verify == Verify::kOn) {
    check_agreement(closed, cubic_sum_brute(field), "cubic character sum", field.p());
  }
  return closed;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Residue> validated_shifts(const PatternSpec& spec, const PrimeField& field) {
  const std::size_t k = spec.shifts.size();
  if (k == 0 || k != spec.signs.size()) {
    raise(ErrorCode::kBadPattern, "shifts and signs must be non-empty and of equal length");
  }
  if (k > static_cast<std::size_t>(kMaxPatternLength)) {
    raise(ErrorCode::kBadPattern, "pattern length above " + std::to_string(kMaxPatternLength));
  }
  for (const int s : spec.signs) {
    if (s != 1 && s != -1) raise(ErrorCode::kBadPattern, "sign must be +1 or -1");
  }
  std::vector<Residue> shifts;
  shifts.reserve(k);
  for (const auto a : spec.shifts) {
    const Residue r = field.reduce(a);
    for (const auto seen : shifts) {
      if (seen == r) raise(ErrorCode::kDuplicateShifts, "shift " + std::to_string(r) + " repeats");
    }
    shifts.push_back(r);
  }
  return shifts;
}

}  // namespace

DefectReport pattern_count(const PatternSpec& spec, const PrimeField& field) {
  const std::vector<Residue> shifts = validated_shifts(spec, field);
  const std::size_t k = shifts.size();

  DefectReport report;
  report.k = static_cast<int>(k);
  for (std::uint64_t c = 0; c < field.p(); ++c) {
    bool match = true;
    std::int64_t product = 1;
    for (std::size_t j = 0; j < k; ++j) {
      const int chi = field.eta(field.add(c, shifts[j]));
      match = match && (chi == spec.signs[j]);
      product *= 1 + spec.signs[j] * chi;
    }
    report.n_exact += match ? 1 : 0;
    report.n_main_scaled += product;
  }
  return report;
}

bool pattern_bound_holds(const DefectReport& report, std::uint64_t p) {
  using Wide = __int128;
  const int k = report.k;
  const Wide half_scale = Wide{1} << (k - 1);
  // Multiply through by 2^k:
  //   |2^k N - p| <= ((k-2) 2^(k-1) + 1) sqrt(p) + k 2^(k-1)
  Wide lhs = (Wide{1} << k) * report.n_exact - static_cast<Wide>(p);
  if (lhs < 0) lhs = -lhs;
  const Wide coeff = (k - 2) * half_scale + 1;
  const Wide slack = lhs - k * half_scale;
  if (slack <= 0) return true;
  if (coeff <= 0) return false;
  return slack * slack <= coeff * coeff * static_cast<Wide>(p);
}

bool pattern_bound_check(const PatternSpec& spec, const PrimeField& field) {
  return pattern_bound_holds(pattern_count(spec, field), field.p());
}

// ---------------------------------------------------------------------------

Polynomial::Polynomial(std::vector<Residue> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::from_integers(std::span<const std::int64_t> coeffs,
                                     const PrimeField& field) {
  std::vector<Residue> reduced;
  reduced.reserve(coeffs.size());
  for (const auto c : coeffs) reduced.push_back(field.reduce(c));
  return Polynomial(std::move(reduced));
}

Residue Polynomial::operator()(Residue x, const PrimeField& field) const noexcept {
  Residue acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = field.add(field.mul(acc, x), *it);
  }
  return acc;
}

bool is_constant_times_square(const Polynomial& f, const PrimeField& field) {
  if (f.is_zero()) return true;
  const int d = f.degree();
  if (d % 2 != 0) return false;

  const Residue lead_inv = field.inverse(static_cast<std::int64_t>(f.coeffs().back()));
  std::vector<Residue> h(f.coeffs().size());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = field.mul(f.coeffs()[i], lead_inv);

  // Monic square root g of degree e, solved from the top coefficient down.
  const int e = d / 2;
  std::vector<Residue> g(static_cast<std::size_t>(e) + 1, 0);
  g[static_cast<std::size_t>(e)] = 1;
  const Residue half = field.inverse(2);
  for (int i = e - 1; i >= 0; --i) {
    Residue cross = 0;
    for (int j = i + 1; j < e; ++j) {
      const int l = e + i - j;
      if (l > i && l < e) {
        cross = field.add(cross, field.mul(g[static_cast<std::size_t>(j)],
                                           g[static_cast<std::size_t>(l)]));
      }
    }
    g[static_cast<std::size_t>(i)] =
        field.mul(field.sub(h[static_cast<std::size_t>(e + i)], cross), half);
  }

  std::vector<Residue> square(h.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      square[i + j] = field.add(square[i + j], field.mul(g[i], g[j]));
    }
  }
  return square == h;
}

WeilReport weil_check(const Polynomial& f, const PrimeField& field) {
  if (f.is_zero()) raise(ErrorCode::kZeroPolynomial, "");
  if (f.degree() < 1) raise(ErrorCode::kBadParameters, "degree must be at least 1");
  if (f.degree() > kMaxWeilDegree) {
    raise(ErrorCode::kDegreeTooLarge, "degree " + std::to_string(f.degree()));
  }
  for (const auto c : f.coeffs()) {
    if (c >= field.p()) raise(ErrorCode::kOutOfRange, "coefficient not reduced mod p");
  }

  WeilReport report;
  report.degree = f.degree();
  for (std::uint64_t x = 0; x < field.p(); ++x) report.sum += field.eta(f(x, field));
  report.bound = (report.degree - 1) * std::sqrt(static_cast<double>(field.p()));
  report.applicable = !is_constant_times_square(f, field);
  const auto d1 = static_cast<__int128>(report.degree - 1);
  const auto s = static_cast<__int128>(report.sum);
  report.holds = s * s <= d1 * d1 * static_cast<__int128>(field.p());
  return report;
}

}  // namespace fpdioph
