#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "fpdioph/tuples.hpp"
#include "test_util.hpp"

namespace fpdioph {
namespace {

using Elements = std::vector<Residue>;

std::set<std::uint64_t> naive_squares(std::uint64_t p) {
  std::set<std::uint64_t> out;
  for (std::uint64_t y = 0; y < p; ++y) out.insert(y * y % p);
  return out;
}

// Every k-subset by bitmask, product reduced mod p.
bool naive_is_tuple(const Elements& t, int k, std::uint64_t p, const std::set<std::uint64_t>& sq) {
  for (std::uint32_t mask = 0; mask < (1U << t.size()); ++mask) {
    if (std::popcount(mask) != k) continue;
    std::uint64_t prod = 1;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if ((mask >> i) & 1U) prod = prod * t[i] % p;
    }
    if (sq.count((prod + 1) % p) == 0) return false;
  }
  return true;
}

std::vector<TupleSet> naive_enumerate(int k, int m, std::uint64_t p) {
  const auto sq = naive_squares(p);
  std::vector<TupleSet> out;
  Elements cur;
  auto rec = [&](auto&& self, Residue next) -> void {
    if (cur.size() == static_cast<std::size_t>(m)) {
      if (naive_is_tuple(cur, k, p, sq)) out.emplace_back(cur);
      return;
    }
    for (Residue x = next; x < p; ++x) {
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

RunOptions quiet(unsigned workers = 1) {
  RunOptions o;
  o.workers = workers;
  return o;
}

TEST(TupleSet, SortsAndValidates) {
  const TupleSet t({4, 1, 2});
  EXPECT_EQ(t.str(), "(1, 2, 4)");
  EXPECT_ERROR_CODE(TupleSet({0, 1}), ErrorCode::kBadTuple);
  EXPECT_ERROR_CODE(TupleSet({3, 1, 3}), ErrorCode::kBadTuple);
}

TEST(IsTuple, Examples) {
  EXPECT_TRUE(is_tuple(TupleSet({1, 2, 4, 6}), 3, make_field(23)));
  EXPECT_FALSE(is_tuple(TupleSet({1, 2, 3}), 3, make_field(23)));
  EXPECT_TRUE(is_tuple(TupleSet({1, 3}), 2, make_field(7)));
  EXPECT_ERROR_CODE(is_tuple(TupleSet({1, 2}), 3, make_field(23)), ErrorCode::kKTooLarge);
  EXPECT_ERROR_CODE(is_tuple(TupleSet({1, 25}), 2, make_field(23)), ErrorCode::kOutOfRange);
}

TEST(Enumerate, Examples) {
  EXPECT_EQ(enumerate(2, 2, make_field(3)), (std::vector<TupleSet>{TupleSet({1, 2})}));
  EXPECT_EQ(enumerate(3, 3, make_field(5)).size(), 2U);
  EXPECT_EQ(enumerate(3, 4, make_field(23)).size(), 330U);
  EXPECT_TRUE(enumerate(3, 3, make_field(3)).empty());
  EXPECT_ERROR_CODE(enumerate(0, 2, make_field(7)), ErrorCode::kBadParameters);
  EXPECT_ERROR_CODE(enumerate(4, 3, make_field(7)), ErrorCode::kKTooLarge);
}

TEST(Enumerate, MatchesNaiveCombinations) {
  for (const auto p : test::odd_primes_below(30)) {
    const auto f = make_field(static_cast<std::int64_t>(p));
    for (int k = 1; k <= 4; ++k) {
      for (int m = k; m <= 5; ++m) {
        ASSERT_EQ(enumerate(k, m, f), naive_enumerate(k, m, p)) << p << " " << k << " " << m;
      }
    }
  }
}

TEST(Enumerate, IndependentOfWorkerCount) {
  const auto f = make_field(61);
  const auto serial = enumerate(3, 4, f, quiet(1));
  for (const unsigned w : {2U, 3U, 8U}) EXPECT_EQ(enumerate(3, 4, f, quiet(w)), serial) << w;
  EXPECT_EQ(count(3, 4, f, quiet(4)).brute_count, static_cast<std::int64_t>(serial.size()));
}

TEST(Enumerate, SoundAndDownwardClosed) {
  for (const std::int64_t p : {23, 37, 53}) {
    const auto f = make_field(p);
    for (int k = 2; k <= 3; ++k) {
      const auto smaller = enumerate(k, 4, f);
      const std::set<TupleSet> lookup(smaller.begin(), smaller.end());
      for (const auto& t : enumerate(k, 5, f)) {
        ASSERT_TRUE(is_tuple(t, k, f));
        for (std::size_t drop = 0; drop < t.size(); ++drop) {
          Elements sub;
          for (std::size_t i = 0; i < t.size(); ++i) {
            if (i != drop) sub.push_back(t[i]);
          }
          ASSERT_TRUE(lookup.count(TupleSet(sub))) << t.str();
        }
      }
    }
  }
}

TEST(IsTuple, PermutationInvariant) {
  const auto f = make_field(23);
  Elements e{6, 1, 4, 2};
  std::sort(e.begin(), e.end());
  do {
    ASSERT_TRUE(is_tuple(TupleSet(e), 3, f));
  } while (std::next_permutation(e.begin(), e.end()));
}

TEST(Enumerate, BudgetRaisesResourceLimit) {
  RunOptions o;
  o.budget.max_tuples = 10;
  EXPECT_ERROR_CODE(enumerate(3, 4, make_field(23), o), ErrorCode::kResourceLimit);
  RunOptions t;
  t.budget.max_time = std::chrono::milliseconds(0);
  EXPECT_ERROR_CODE(count(3, 4, make_field(499), t), ErrorCode::kResourceLimit);
}

TEST(Count, Examples) {
  EXPECT_EQ(count(3, 3, make_field(23)).brute_count, 770);
  EXPECT_EQ(count(3, 3, make_field(41)).brute_count, 4940);
  EXPECT_EQ(count(3, 3, make_field(3)).brute_count, 0);
  const auto r = count(3, 3, make_field(19));
  ASSERT_TRUE(r.closed_form.has_value());
  EXPECT_EQ(to_string(*r.closed_form), "407");
  EXPECT_EQ(to_string(*r.delta), "0");
}

TEST(ClosedFormN3, Examples) {
  EXPECT_EQ(to_string(closed_form_n3(make_field(7))), "11");
  EXPECT_EQ(to_string(closed_form_n3(make_field(19))), "407");
  EXPECT_EQ(to_string(closed_form_n3(make_field(101))), "80850");
  EXPECT_EQ(to_string(closed_form_n3(make_field(229))), "974742");
  EXPECT_ERROR_CODE(closed_form_n3(make_field(3)), ErrorCode::kBadParameters);
}

TEST(ClosedFormN3, AgreesWithEnumerationUpTo199) {
  for (const auto p : test::odd_primes_below(200, 5)) {
    const auto r = count(3, 3, make_field(static_cast<std::int64_t>(p)), quiet());
    ASSERT_EQ(std::to_string(r.brute_count), to_string(*r.closed_form)) << p;
  }
}

TEST(CubeCount, Examples) {
  EXPECT_EQ(cube_count(make_field(5)).brute_count, 6);
  EXPECT_EQ(cube_count(make_field(7)).brute_count, 24);
  EXPECT_EQ(cube_count(make_field(11)).brute_count, 72);
  EXPECT_ERROR_CODE(cube_count(make_field(3)), ErrorCode::kBadParameters);
}

TEST(CubeCount, MatchesNaiveTripleLoop) {
  for (const auto p : test::odd_primes_below(60, 5)) {
    std::int64_t naive = 0;
    for (std::uint64_t a = 0; a < p; ++a) {
      for (std::uint64_t b = 0; b < p; ++b) {
        for (std::uint64_t c = 0; c < p; ++c) {
          if (a != b && b != c && a != c && a * b % p * c % p == p - 1) ++naive;
        }
      }
    }
    ASSERT_EQ(cube_count(make_field(static_cast<std::int64_t>(p))).brute_count, naive) << p;
  }
}

TEST(CubeAndPairCount, ClosedFormsBelow500) {
  for (const auto p : test::odd_primes_below(500, 5)) {
    const auto f = make_field(static_cast<std::int64_t>(p));
    const auto cube = cube_count(f);
    ASSERT_EQ(to_string(*cube.delta), "0") << p;
    const auto ip = static_cast<std::int64_t>(p);
    ASSERT_EQ(cube.brute_count, (ip - 2) * (ip - 3) + (p % 3 == 1 ? 4 : 0));
    const auto pair = pair_count(f);
    ASSERT_EQ(pair.brute_count, p % 4 == 1 ? ip - 3 : ip - 1) << p;
  }
  EXPECT_EQ(pair_count(make_field(5)).brute_count, 2);
  EXPECT_EQ(pair_count(make_field(7)).brute_count, 6);
  EXPECT_EQ(pair_count(make_field(13)).brute_count, 10);
}

TEST(Asymptotic, Examples) {
  EXPECT_NEAR(static_cast<double>(asymptotic_ratio(3, make_field(101)).ratio), 0.9416666, 1e-6);
  EXPECT_NEAR(static_cast<double>(asymptotic_ratio(3, make_field(5)).ratio), 0.192, 1e-12);
  EXPECT_ERROR_CODE(asymptotic_ratio(1, make_field(5)), ErrorCode::kBadParameters);
}

TEST(Asymptotic, DeviationShrinksLikeOneOverP) {
  for (const auto p : test::odd_primes_below(300, 5)) {
    const auto r = asymptotic_ratio(3, make_field(static_cast<std::int64_t>(p)));
    ASSERT_LE(static_cast<double>(r.deviation), 10.0 / static_cast<double>(p)) << p;
  }
}

TEST(Bounds, Examples) {
  EXPECT_EQ(general_existence_bound(2, 2), 1024);
  EXPECT_EQ(diagonal_bound(2), 1024);
  EXPECT_EQ(three_tuple_bound(3), 7744);
  EXPECT_EQ(general_existence_bound(3, 3), 7744);
  EXPECT_EQ(general_existence_bound(3, 4), 1048576);
  const auto spec = existence_bound(3, 3);
  EXPECT_EQ(*spec.three_bound, 7744);
  EXPECT_EQ(*spec.diagonal_bound, 7744);
  EXPECT_FALSE(existence_bound(2, 3).three_bound.has_value());
  EXPECT_ERROR_CODE(existence_bound(3, 2), ErrorCode::kBadParameters);
  EXPECT_ERROR_CODE(existence_bound(1, 2), ErrorCode::kBadParameters);
}

TEST(Bounds, SpecialisationsNeverExceedGeneral) {
  for (int m = 3; m <= 12; ++m) {
    EXPECT_LE(three_tuple_bound(m), general_existence_bound(3, m)) << m;
  }
  for (int k = 2; k <= 20; ++k) EXPECT_EQ(diagonal_bound(k), general_existence_bound(k, k));
}

TEST(Witness, Examples) {
  const auto g = find_witness(3, 4, make_field(23));
  EXPECT_EQ(g.tuple, TupleSet({1, 2, 4, 6}));
  EXPECT_EQ(g.start, (Elements{1, 2, 4}));
  EXPECT_EQ(g.extension_trace, (Elements{6}));
  EXPECT_EQ(g.candidate_count, 2U);
  EXPECT_TRUE(g.greedy);

  const auto h = find_witness(2, 3, make_field(11));
  EXPECT_EQ(h.tuple, TupleSet({1, 2, 4}));
  EXPECT_TRUE(h.greedy);

  // Greedy from (1, 3) dead-ends at p = 7.
  const auto fb = find_witness(2, 3, make_field(7));
  EXPECT_EQ(fb.tuple, TupleSet({2, 3, 5}));
  EXPECT_FALSE(fb.greedy);
  EXPECT_EQ(fb.candidate_count, 1U);

  EXPECT_EQ(find_witness(3, 5, make_field(29)).tuple, TupleSet({2, 9, 10, 19, 22}));
  EXPECT_ERROR_CODE(find_witness(1, 3, make_field(7)), ErrorCode::kBadParameters);
  EXPECT_ERROR_CODE(find_witness(2, 7, make_field(7)), ErrorCode::kBadParameters);
}

TEST(Witness, ResultIsATupleWithConsistentTrace) {
  for (const auto p : test::odd_primes_below(120, 5)) {
    const auto f = make_field(static_cast<std::int64_t>(p));
    for (const auto [k, m] : {std::pair{2, 3}, {3, 3}, {3, 4}}) {
      if (!first_tuple(k, m, f)) {
        EXPECT_ERROR_CODE(find_witness(k, m, f), ErrorCode::kNoWitness) << p;
        continue;
      }
      const auto w = find_witness(k, m, f);
      ASSERT_TRUE(is_tuple(w.tuple, k, f));
      ASSERT_EQ(w.tuple.size(), static_cast<std::size_t>(m));
      ASSERT_EQ(w.start.size() + w.extension_trace.size(), static_cast<std::size_t>(m));
      ASSERT_GE(w.candidate_count, 1U);
      if (w.greedy) ASSERT_EQ(TupleSet(w.start), *first_tuple(k, k, f));
    }
  }
}

TEST(ExtensionCandidates, Examples) {
  const auto f = make_field(23);
  const Elements cur{1, 2, 4};
  const auto c = extension_candidates(cur, 3, f);
  EXPECT_EQ(c.size(), 2U);
  EXPECT_EQ(c.front(), 6U);
  for (const auto x : c) {
    Elements t = cur;
    t.push_back(x);
    EXPECT_TRUE(is_tuple(TupleSet(t), 3, f));
  }
}

}  // namespace
}  // namespace fpdioph
