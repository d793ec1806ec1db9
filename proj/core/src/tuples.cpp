#include "fpdioph/tuples.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "fpdioph/curve_count.hpp"
#include "fpdioph/error.hpp"

namespace fpdioph {

std::string to_string(Wide v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  unsigned __int128 u = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1
                                 : static_cast<unsigned __int128>(v);
  std::string digits;
  while (u != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

TupleSet::TupleSet(std::vector<Residue> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  if (!elements_.empty() && elements_.front() == 0) raise(ErrorCode::kBadTuple, "zero element");
  if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end()) {
    raise(ErrorCode::kBadTuple, "repeated element");
  }
}

std::string TupleSet::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i != 0) out += ", ";
    out += std::to_string(elements_[i]);
  }
  out += ')';
  return out;
}

namespace {

// Products of all j-element subsets of values, appended to out.
void subset_products(std::span<const Residue> values, int j, const PrimeField& field,
                     std::vector<Residue>& out, std::size_t start = 0, Residue acc = 1) {
  if (j == 0) {
    out.push_back(acc);
    return;
  }
  for (std::size_t i = start; i + static_cast<std::size_t>(j) <= values.size(); ++i) {
    subset_products(values, j - 1, field, out, i + 1, field.mul(acc, values[i]));
  }
}

void check_k(int k, std::size_t m) {
  if (k < 1) raise(ErrorCode::kBadParameters, "k must be at least 1");
  if (static_cast<std::size_t>(k) > m) {
    raise(ErrorCode::kKTooLarge, "k=" + std::to_string(k) + " exceeds m=" + std::to_string(m));
  }
}

using Clock = std::chrono::steady_clock;

struct SearchControl {
  std::atomic<bool> stop{false};
  std::atomic<bool> budget_hit{false};
  std::atomic<std::uint64_t> emitted{0};
  std::optional<std::uint64_t> max_tuples;
  std::optional<Clock::time_point> deadline;

  explicit SearchControl(const Budget& budget) : max_tuples(budget.max_tuples) {
    if (budget.max_time) deadline = Clock::now() + *budget.max_time;
  }

  void trip() {
    budget_hit = true;
    stop = true;
  }

  // Returns false once the tuple budget is exhausted.
  bool note_emitted(std::uint64_t n) {
    const std::uint64_t total = emitted.fetch_add(n) + n;
    if (max_tuples && total > *max_tuples) {
      trip();
      return false;
    }
    return true;
  }
};

class Searcher {
 public:
  Searcher(const PrimeField& field, int k, int m, SearchControl* control)
      : field_(field),
        k_(k),
        m_(m),
        control_(control),
        prods_(static_cast<std::size_t>(m) + 1, std::vector<std::vector<Residue>>(k)),
        acc_(static_cast<std::size_t>(m)),
        chosen_(static_cast<std::size_t>(m)) {
    prods_[0][0] = {1};
  }

  // Visits every tuple whose smallest element is `first`. leaf(span) returns
  // false to stop the search; the return value is false if it was stopped.
  template <class Leaf>
  bool from_first(Residue first, Leaf&& leaf) {
    return descend(0, first, first, leaf);
  }

 private:
  template <class Leaf>
  bool descend(int depth, Residue lo, Residue hi, Leaf& leaf) {
    if ((++nodes_ & 0xFFFU) == 0 && should_stop()) return false;

    const auto d = static_cast<std::size_t>(depth);
    const std::vector<Residue>& constraints = prods_[d][static_cast<std::size_t>(k_ - 1)];
    std::vector<Residue>& acc = acc_[d];
    acc.resize(constraints.size());
    for (std::size_t i = 0; i < constraints.size(); ++i) {
      acc[i] = field_.add(field_.mul(constraints[i], lo), 1);
    }

    const std::uint64_t p = field_.p();
    const bool last = depth + 1 == m_;
    for (Residue x = lo; x <= hi; ++x) {
      bool ok = true;
      for (std::size_t i = 0; i < acc.size(); ++i) {
        ok = ok && field_.square_at(acc[i]);
        const Residue next = acc[i] + constraints[i];
        acc[i] = next >= p ? next - p : next;
      }
      if (!ok) continue;
      chosen_[d] = x;
      if (last) {
        if (!leaf(std::span<const Residue>(chosen_))) return false;
      } else {
        extend(d, x);
        const Residue next_hi = p - static_cast<Residue>(m_ - depth - 1);
        if (!descend(depth + 1, x + 1, next_hi, leaf)) return false;
      }
    }
    return true;
  }

  void extend(std::size_t d, Residue x) {
    auto& next = prods_[d + 1];
    const auto& cur = prods_[d];
    next[0] = {1};
    for (std::size_t j = 1; j < next.size(); ++j) {
      next[j] = cur[j];
      for (const auto q : cur[j - 1]) next[j].push_back(field_.mul(q, x));
    }
  }

  bool should_stop() const {
    if (control_ == nullptr) return false;
    if (control_->stop.load(std::memory_order_relaxed)) return true;
    if (control_->deadline && Clock::now() > *control_->deadline) {
      control_->trip();
      return true;
    }
    return false;
  }

  const PrimeField& field_;
  int k_;
  int m_;
  SearchControl* control_;
  // prods_[d][j]: products of all j-subsets of the first d chosen elements.
  std::vector<std::vector<std::vector<Residue>>> prods_;
  std::vector<std::vector<Residue>> acc_;
  std::vector<Residue> chosen_;
  std::uint64_t nodes_ = 0;
};

// Runs body(searcher, first) for first = 1..last over a pool of workers.
template <class Body>
void for_each_first(const PrimeField& field, int k, int m, unsigned workers,
                    SearchControl& control, Residue last, Body&& body) {
  std::atomic<Residue> next{1};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    try {
      Searcher searcher(field, k, m, &control);
      for (Residue first = next++; first <= last; first = next++) {
        if (control.stop.load(std::memory_order_relaxed)) return;
        body(searcher, first);
      }
    } catch (...) {
      const std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      control.stop = true;
    }
  };

  const unsigned n = std::max(1U, workers);
  if (n == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  if (control.budget_hit) {
    raise(ErrorCode::kResourceLimit, "tuple or time budget exhausted at p=" +
                                         std::to_string(field.p()));
  }
}

bool fits(int m, const PrimeField& field) {
  return static_cast<std::uint64_t>(m) <= field.p() - 1;
}

}  // namespace

bool is_tuple(const TupleSet& tuple, int k, const PrimeField& field) {
  check_k(k, tuple.size());
  for (const auto e : tuple.elements()) {
    if (e >= field.p()) raise(ErrorCode::kOutOfRange, std::to_string(e) + " >= p");
  }
  std::vector<Residue> products;
  subset_products(tuple.elements(), k, field, products);
  return std::all_of(products.begin(), products.end(),
                     [&](Residue q) { return field.square_at(field.add(q, 1)); });
}

std::vector<TupleSet> enumerate(int k, int m, const PrimeField& field, const RunOptions& options) {
  check_k(k, static_cast<std::size_t>(m));
  if (!fits(m, field)) return {};

  const Residue last_first = field.p() - static_cast<Residue>(m);
  std::vector<std::vector<TupleSet>> by_first(last_first + 1);
  SearchControl control(options.budget);
  for_each_first(field, k, m, options.workers, control, last_first,
                 [&](Searcher& searcher, Residue first) {
                   std::vector<TupleSet> found;
                   searcher.from_first(first, [&](std::span<const Residue> t) {
                     found.emplace_back(std::vector<Residue>(t.begin(), t.end()));
                     return control.note_emitted(1);
                   });
                   by_first[first] = std::move(found);
                 });

  std::vector<TupleSet> out;
  for (auto& part : by_first) {
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

std::optional<TupleSet> first_tuple(int k, int m, const PrimeField& field) {
  check_k(k, static_cast<std::size_t>(m));
  if (!fits(m, field)) return std::nullopt;
  Searcher searcher(field, k, m, nullptr);
  std::optional<TupleSet> found;
  const Residue last_first = field.p() - static_cast<Residue>(m);
  for (Residue first = 1; first <= last_first && !found; ++first) {
    searcher.from_first(first, [&](std::span<const Residue> t) {
      found.emplace(std::vector<Residue>(t.begin(), t.end()));
      return false;
    });
  }
  return found;
}

Wide closed_form_n3(const PrimeField& field) {
  const auto p = static_cast<Wide>(field.p());
  if (p < 5) raise(ErrorCode::kBadParameters, "closed form for N3 needs p >= 5");
  const Wide triple = (p - 1) * (p - 2) * (p - 3);
  // (p-1)(p-3) carries a factor 8 and three consecutive integers a factor 3.
  Wide value = triple / 12;
  if (field.p() % 3 == 1) {
    const std::int64_t a = represent(field).a;
    value += (a + 1) / 3;
  }
  return value;
}

CountReport count(int k, int m, const PrimeField& field, const RunOptions& options) {
  check_k(k, static_cast<std::size_t>(m));
  const auto start = Clock::now();

  CountReport report;
  report.label = "N(" + std::to_string(k) + "," + std::to_string(m) + ")";
  report.p = field.p();
  report.k = k;
  report.m = m;

  if (fits(m, field)) {
    const Residue last_first = field.p() - static_cast<Residue>(m);
    std::atomic<std::int64_t> total{0};
    SearchControl control(options.budget);
    for_each_first(field, k, m, options.workers, control, last_first,
                   [&](Searcher& searcher, Residue first) {
                     // The shared counter is only touched once per subtree;
                     // a single huge subtree is caught by the local check.
                     std::uint64_t local = 0;
                     searcher.from_first(first, [&](std::span<const Residue>) {
                       ++local;
                       if (control.max_tuples && local > *control.max_tuples) {
                         control.trip();
                         return false;
                       }
                       return true;
                     });
                     control.note_emitted(local);
                     total += static_cast<std::int64_t>(local);
                   });
    report.brute_count = total;
  }

  if (k == 3 && m == 3 && field.p() >= 5) {
    report.closed_form = closed_form_n3(field);
    report.delta = Wide{report.brute_count} - *report.closed_form;
    if (options.verify == Verify::kOn && *report.delta != 0) {
      raise(ErrorCode::kOracleMismatch,
            "N3 at p=" + std::to_string(field.p()) + ": enumeration " +
                std::to_string(report.brute_count) + " vs formula " +
                to_string(*report.closed_form));
    }
  }
  report.elapsed = Clock::now() - start;
  return report;
}

namespace {

void finish_with_closed_form(CountReport& report, Wide closed, Verify verify) {
  report.closed_form = closed;
  report.delta = Wide{report.brute_count} - closed;
  if (verify == Verify::kOn && *report.delta != 0) {
    raise(ErrorCode::kOracleMismatch, report.label + " at p=" + std::to_string(report.p) +
                                          ": enumeration " + std::to_string(report.brute_count) +
                                          " vs formula " + to_string(closed));
  }
}

}  // namespace

CountReport cube_count(const PrimeField& field, Verify verify) {
  const auto start = Clock::now();
  const std::uint64_t p = field.p();
  if (p < 5) raise(ErrorCode::kBadParameters, "cube count needs p >= 5");

  // neg_inv[t] is the unique c with t*c = -1.
  std::vector<Residue> neg_inv(p, 0);
  for (Residue t = 1; t < p; ++t) neg_inv[t] = field.neg(field.inverse(static_cast<std::int64_t>(t)));

  CountReport report;
  report.label = "cubes(ordered,distinct)";
  report.p = p;
  report.k = 3;
  report.m = 3;
  for (Residue a = 1; a < p; ++a) {
    Residue ab = 0;
    for (Residue b = 0; b < p; ++b, ab = field.add(ab, a)) {
      if (b == a || ab == 0) continue;
      const Residue c = neg_inv[ab];
      if (c != a && c != b) ++report.brute_count;
    }
  }
  const auto wp = static_cast<Wide>(p);
  finish_with_closed_form(report, (wp - 2) * (wp - 3) + (p % 3 == 1 ? 4 : 0), verify);
  report.elapsed = Clock::now() - start;
  return report;
}

CountReport pair_count(const PrimeField& field, Verify verify) {
  const auto start = Clock::now();
  const std::uint64_t p = field.p();
  CountReport report;
  report.label = "pairs(ordered,distinct)";
  report.p = p;
  report.k = 2;
  report.m = 2;
  for (Residue a = 0; a < p; ++a) {
    for (Residue b = 0; b < p; ++b) {
      if (a != b && field.mul(a, b) == p - 1) ++report.brute_count;
    }
  }
  const auto wp = static_cast<Wide>(p);
  finish_with_closed_form(report, p % 4 == 1 ? wp - 3 : wp - 1, verify);
  report.elapsed = Clock::now() - start;
  return report;
}

AsymptoticReport asymptotic_ratio(int k, const PrimeField& field, const RunOptions& options) {
  if (k < 2) raise(ErrorCode::kBadParameters, "asymptotic ratio needs k >= 2");
  AsymptoticReport report;
  report.k = k;
  report.p = field.p();
  report.count = count(k, k, field, options).brute_count;
  long double scale = 2.0L;
  for (int i = 2; i <= k; ++i) scale *= i;
  report.ratio = static_cast<long double>(report.count) * scale /
                 std::pow(static_cast<long double>(field.p()), k);
  report.deviation = std::fabs(report.ratio - 1.0L);
  return report;
}

// ---------------------------------------------------------------------------

namespace {

BigInt binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  BigInt value = 1;
  for (int i = 1; i <= r; ++i) {
    value *= n - r + i;
    value /= i;
  }
  return value;
}

unsigned small_exponent(const BigInt& e) {
  if (e > 1'000'000) raise(ErrorCode::kBadParameters, "exponent too large for exact evaluation");
  return e.convert_to<unsigned>();
}

}  // namespace

BigInt general_existence_bound(int k, int m) {
  if (k < 2 || m < k) raise(ErrorCode::kBadParameters, "need 2 <= k <= m");
  const BigInt c = binomial(m, k - 1);
  // 4^(C+1) (C/2 + m + 1)^2 = 4^C (C + 2m + 2)^2, kept integral.
  const BigInt base = c + 2 * m + 2;
  return boost::multiprecision::pow(BigInt(4), small_exponent(c)) * base * base;
}

BigInt three_tuple_bound(int m) {
  if (m < 3) raise(ErrorCode::kBadParameters, "need m >= 3");
  const BigInt e = BigInt(m) * m - m - 2;
  const BigInt base = BigInt(m) * m + 3 * m + 4;
  return boost::multiprecision::pow(BigInt(2), small_exponent(e)) * base * base;
}

BigInt diagonal_bound(int k) {
  if (k < 2) raise(ErrorCode::kBadParameters, "need k >= 2");
  const BigInt base = 3 * k + 2;
  return boost::multiprecision::pow(BigInt(4), static_cast<unsigned>(k)) * base * base;
}

BoundSpec existence_bound(int k, int m) {
  BoundSpec spec;
  spec.k = k;
  spec.m = m;
  spec.bound = general_existence_bound(k, m);
  if (k == 3) spec.three_bound = three_tuple_bound(m);
  if (m == k) spec.diagonal_bound = diagonal_bound(k);
  return spec;
}

std::vector<Residue> extension_candidates(std::span<const Residue> current, int k,
                                          const PrimeField& field) {
  check_k(k, current.size() + 1);
  std::vector<Residue> products;
  subset_products(current, k - 1, field, products);
  std::vector<Residue> out;
  for (Residue x = 1; x < field.p(); ++x) {
    if (std::find(current.begin(), current.end(), x) != current.end()) continue;
    const bool ok = std::all_of(products.begin(), products.end(), [&](Residue q) {
      return field.square_at(field.add(field.mul(q, x), 1));
    });
    if (ok) out.push_back(x);
  }
  return out;
}

WitnessReport find_witness(int k, int m, const PrimeField& field) {
  if (k < 2) raise(ErrorCode::kBadParameters, "witness search needs k >= 2");
  check_k(k, static_cast<std::size_t>(m));
  if (!fits(m, field)) {
    raise(ErrorCode::kBadParameters, "m exceeds p - 1");
  }

  const auto start = first_tuple(k, k, field);
  if (!start) {
    raise(ErrorCode::kNoWitness, "no " + std::to_string(k) + "-tuple at p=" +
                                     std::to_string(field.p()));
  }

  WitnessReport report;
  report.start.assign(start->elements().begin(), start->elements().end());
  std::vector<Residue> chain = report.start;
  while (chain.size() < static_cast<std::size_t>(m)) {
    const auto candidates = extension_candidates(chain, k, field);
    if (candidates.empty()) break;
    chain.push_back(candidates.front());
    report.extension_trace.push_back(candidates.front());
  }

  if (chain.size() < static_cast<std::size_t>(m)) {
    const auto fallback = first_tuple(k, m, field);
    if (!fallback) {
      raise(ErrorCode::kNoWitness, "no " + std::to_string(k) + "-Diophantine " +
                                       std::to_string(m) + "-tuple at p=" +
                                       std::to_string(field.p()));
    }
    report.greedy = false;
    chain.assign(fallback->elements().begin(), fallback->elements().end());
    report.start.assign(chain.begin(), chain.begin() + k);
    report.extension_trace.assign(chain.begin() + k, chain.end());
  }

  const std::span<const Residue> rest(chain.data(), chain.size() - 1);
  report.candidate_count = extension_candidates(rest, k, field).size();
  report.tuple = TupleSet(chain);
  return report;
}

}  // namespace fpdioph
