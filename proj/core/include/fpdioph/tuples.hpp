#pragma once

// k-Diophantine m-tuples over F_p: sets of m distinct nonzero residues in
// which every product of k distinct members, plus one, is a square (0
// included).
//
// The enumeration engine walks ascending m-subsets depth first. For every
// prefix it keeps the products of all its (k-1)-subsets; a new element x is
// admissible iff q*x + 1 is a square for each of those products q. Along one
// level the values q*x + 1 are advanced by repeated addition of q, so the
// inner loop is an add, a compare and one table lookup per live constraint.
// Work is partitioned on the smallest element and merged in order, so output
// does not depend on the worker count.

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fpdioph/char_sums.hpp"
#include "fpdioph/ff_core.hpp"

namespace fpdioph {

using Wide = __int128;
using BigInt = boost::multiprecision::cpp_int;

std::string to_string(Wide v);

class TupleSet {
 public:
  TupleSet() = default;
  // Sorts the input. Throws kBadTuple on zero or repeated elements.
  explicit TupleSet(std::vector<Residue> elements);

  std::span<const Residue> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  Residue operator[](std::size_t i) const noexcept { return elements_[i]; }

  // "(a1, a2, ..., am)"
  std::string str() const;

  friend auto operator<=>(const TupleSet&, const TupleSet&) = default;
  friend bool operator==(const TupleSet&, const TupleSet&) = default;

 private:
  std::vector<Residue> elements_;
};

struct Budget {
  std::optional<std::uint64_t> max_tuples;
  std::optional<std::chrono::milliseconds> max_time;
};

struct RunOptions {
  unsigned workers = 1;
  Budget budget;
  Verify verify = Verify::kOn;
};

// Throws kKTooLarge when k > |S|, kOutOfRange for elements >= p.
bool is_tuple(const TupleSet& tuple, int k, const PrimeField& field);

// All k-Diophantine m-tuples in lexicographic order; empty when m > p-1.
// Throws kKTooLarge, kBadParameters (k < 1), kResourceLimit when the budget
// is hit.
std::vector<TupleSet> enumerate(int k, int m, const PrimeField& field,
                                const RunOptions& options = {});

// Lexicographically smallest k-Diophantine m-tuple, if any.
std::optional<TupleSet> first_tuple(int k, int m, const PrimeField& field);

struct CountReport {
  std::string label;
  std::uint64_t p = 0;
  int k = 0;
  int m = 0;
  std::int64_t brute_count = 0;
  std::optional<Wide> closed_form;
  std::optional<Wide> delta;
  std::chrono::nanoseconds elapsed{0};
};

// Streaming count; attaches closed_form_n3 for (k, m) = (3, 3) and p >= 5.
// The budget applies as in enumerate, counting tuples instead of storing them.
// With Verify::kOn a nonzero delta throws kOracleMismatch.
CountReport count(int k, int m, const PrimeField& field, const RunOptions& options = {});

// C(p-1, 3)/2 + (a+1)/3, the last term only when p = 1 (mod 3). p >= 5.
Wide closed_form_n3(const PrimeField& field);

// Ordered triples of pairwise-distinct residues with abc = -1.
CountReport cube_count(const PrimeField& field, Verify verify = Verify::kOn);

// Ordered pairs a != b with ab = -1.
CountReport pair_count(const PrimeField& field, Verify verify = Verify::kOn);

struct AsymptoticReport {
  int k = 0;
  std::uint64_t p = 0;
  std::int64_t count = 0;
  long double ratio = 0;      // N_k(p) * k! * 2 / p^k
  long double deviation = 0;  // |ratio - 1|
};

AsymptoticReport asymptotic_ratio(int k, const PrimeField& field, const RunOptions& options = {});

struct BoundSpec {
  int k = 0;
  int m = 0;
  BigInt bound;                          // 4^(C(m,k-1)+1) (C(m,k-1)/2 + m + 1)^2
  std::optional<BigInt> three_bound;     // k = 3: 2^(m^2-m-2) (m^2+3m+4)^2
  std::optional<BigInt> diagonal_bound;  // m = k: 4^k (3k+2)^2
};

// Throws kBadParameters unless 2 <= k <= m.
BoundSpec existence_bound(int k, int m);

BigInt general_existence_bound(int k, int m);
BigInt three_tuple_bound(int m);
BigInt diagonal_bound(int k);

// Residues x outside current and 0 such that q*x + 1 is a square for the
// product q of every (k-1)-subset of current.
std::vector<Residue> extension_candidates(std::span<const Residue> current, int k,
                                          const PrimeField& field);

struct WitnessReport {
  TupleSet tuple;
  std::vector<Residue> start;            // the initial k-tuple
  std::vector<Residue> extension_trace;  // elements appended after it, in order
  std::uint64_t candidate_count = 0;     // admissible choices for the last element
  bool greedy = true;                    // false when the fallback search was needed
};

// Lexicographically first k-tuple, then repeated extension by the smallest
// admissible residue. If the greedy chain dead-ends the lexicographically
// first m-tuple is returned instead. Throws kNoWitness when none exists.
WitnessReport find_witness(int k, int m, const PrimeField& field);

}  // namespace fpdioph
