#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <random>
#include <set>
#include <vector>

#include "fpdioph/error.hpp"
#include "fpdioph/ff_core.hpp"
#include "test_util.hpp"

namespace fpdioph {
namespace {

std::set<Residue> naive_squares(std::uint64_t p) {
  std::set<Residue> out;
  for (std::uint64_t y = 0; y < p; ++y) out.insert(y * y % p);
  return out;
}

TEST(MakeField, SevenMarksZeroOneTwoFour) {
  const auto f = make_field(7);
  std::vector<Residue> marked;
  for (Residue r = 0; r < 7; ++r) {
    if (f.is_square(r)) marked.push_back(r);
  }
  EXPECT_EQ(marked, (std::vector<Residue>{0, 1, 2, 4}));
}

TEST(MakeField, ThreeMarksZeroOne) {
  const auto f = make_field(3);
  EXPECT_TRUE(f.is_square(0));
  EXPECT_TRUE(f.is_square(1));
  EXPECT_FALSE(f.is_square(2));
}

TEST(MakeField, RejectsNonOddPrimes) {
  for (const std::int64_t bad : {9, 2, 1, 0, -7, 4, 561, 1'000'000}) {
    EXPECT_ERROR_CODE(make_field(bad), ErrorCode::kNotOddPrime) << bad;
  }
}

TEST(MakeField, RejectsModulusBeyondTable) {
  EXPECT_ERROR_CODE(make_field(4294967311LL), ErrorCode::kModulusTooLarge);
}

TEST(MakeField, TableMatchesNaiveSquaresAndHasHalfPlusOneEntries) {
  for (const auto p : test::odd_primes_below(500)) {
    const auto f = make_field(static_cast<std::int64_t>(p));
    const auto squares = naive_squares(p);
    EXPECT_EQ(f.square_count(), (p + 1) / 2) << p;
    for (Residue r = 0; r < p; ++r) {
      ASSERT_EQ(f.is_square(r), squares.count(r) == 1) << "p=" << p << " r=" << r;
    }
  }
}

TEST(Legendre, Examples) {
  EXPECT_EQ(make_field(7).legendre(1), CharValue::kResidue);
  EXPECT_EQ(make_field(101).legendre(1), CharValue::kResidue);
  EXPECT_EQ(make_field(7).legendre(14), CharValue::kZero);
  EXPECT_EQ(make_field(7).legendre(3), CharValue::kNonResidue);
  EXPECT_EQ(make_field(7).legendre(-3), CharValue::kResidue);  // -3 = 4
}

TEST(Legendre, AgreesWithTable) {
  for (const auto p : test::odd_primes_below(500)) {
    const auto f = make_field(static_cast<std::int64_t>(p));
    std::uint64_t residues = 0;
    for (Residue a = 0; a < p; ++a) {
      const CharValue v = f.legendre(static_cast<std::int64_t>(a));
      ASSERT_EQ(v == CharValue::kResidue, f.is_square(a) && a != 0) << p << " " << a;
      ASSERT_EQ(v == CharValue::kZero, a == 0);
      ASSERT_EQ(to_int(v), f.eta(a));
      residues += v == CharValue::kResidue ? 1 : 0;
    }
    EXPECT_EQ(residues, (p - 1) / 2);
  }
}

TEST(Legendre, Multiplicative) {
  for (const auto p : test::odd_primes_below(200)) {
    const auto f = make_field(static_cast<std::int64_t>(p));
    for (std::int64_t a = 1; a < static_cast<std::int64_t>(p); ++a) {
      for (std::int64_t b = 1; b < static_cast<std::int64_t>(p); ++b) {
        ASSERT_EQ(to_int(f.legendre(a * b)), to_int(f.legendre(a)) * to_int(f.legendre(b)));
      }
    }
  }
}

TEST(Inverse, Examples) {
  EXPECT_EQ(make_field(7).inverse(1), 1U);
  EXPECT_EQ(make_field(7).inverse(2), 4U);
  EXPECT_EQ(make_field(7).inverse(-1), 6U);
  EXPECT_ERROR_CODE(make_field(7).inverse(0), ErrorCode::kZeroInverse);
  EXPECT_ERROR_CODE(make_field(7).inverse(21), ErrorCode::kZeroInverse);
}

TEST(Inverse, Involution) {
  for (const auto p : test::odd_primes_below(500)) {
    const auto f = make_field(static_cast<std::int64_t>(p));
    for (Residue a = 1; a < p; ++a) {
      const Residue inv = f.inverse(static_cast<std::int64_t>(a));
      ASSERT_EQ(f.mul(a, inv), 1U);
      ASSERT_EQ(f.inverse(static_cast<std::int64_t>(inv)), a);
    }
  }
}

TEST(IsSquare, Examples) {
  const auto f23 = make_field(23);
  EXPECT_TRUE(f23.is_square(0));
  EXPECT_TRUE(f23.is_square(9));
  EXPECT_FALSE(make_field(7).is_square(5));
  EXPECT_ERROR_CODE(f23.is_square(23), ErrorCode::kOutOfRange);
}

TEST(ModArith, Examples) {
  EXPECT_EQ(make_field(23).mul(6, 4), 1U);
  EXPECT_EQ(make_field(7).pow(3, 0), 1U);
  EXPECT_EQ(make_field(13).pow(3, 3), 1U);
  EXPECT_EQ(make_field(13).add(12, 5), 4U);
  EXPECT_EQ(make_field(13).sub(2, 5), 10U);
}

TEST(ModArith, SixtyFourBitModulusAgreesWithBigIntegers) {
  using boost::multiprecision::cpp_int;
  std::mt19937_64 rng(7);
  constexpr std::uint64_t m = 18446744073709551557ULL;  // largest 64-bit prime
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t a = rng() % m;
    const std::uint64_t b = rng() % m;
    const cpp_int prod = cpp_int(a) * b % m;
    ASSERT_EQ(cpp_int(modarith::mulmod(a, b, m)), prod);
    ASSERT_EQ(cpp_int(modarith::addmod(a, b, m)), (cpp_int(a) + b) % m);
  }
  EXPECT_EQ(modarith::powmod(2, m - 1, m), 1U);
}

TEST(Primality, MatchesSieveAndKnownValues) {
  const auto sieve = test::sieve(100'000);
  for (std::uint64_t n = 0; n <= 100'000; ++n) ASSERT_EQ(is_prime(n), sieve[n] != 0) << n;
  EXPECT_TRUE(is_prime(18446744073709551557ULL));
  EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_EQ(next_prime(1024), 1031U);
  EXPECT_EQ(next_prime(7744), 7753U);
  EXPECT_EQ(next_prime(1048576), 1048583U);
}

}  // namespace
}  // namespace fpdioph
