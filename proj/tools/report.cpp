#include "report.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>
#include <utility>

#include "fpdioph/char_sums.hpp"
#include "fpdioph/error.hpp"
#include "fpdioph/parallel.hpp"

namespace fpdioph::report {

void validate(const RunConfig& config) {
  if (config.workers < 1) raise(ErrorCode::kBadParameters, "worker count must be at least 1");
  for (const auto p : config.primes) {
    if (p < 3 || !is_prime(p)) {
      raise(ErrorCode::kNotOddPrime, std::to_string(p) + " is not an odd prime");
    }
  }
  if (config.k > config.m) {
    raise(ErrorCode::kKTooLarge, "k exceeds m (k=" + std::to_string(config.k) +
                                     ", m=" + std::to_string(config.m) + ")");
  }
  if (config.pmin && config.pmax && *config.pmin > *config.pmax) {
    raise(ErrorCode::kBadParameters, "pmin exceeds pmax");
  }
}

namespace {

std::string_view format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::kCsv: return "csv";
    case OutputFormat::kJson: return "json";
    case OutputFormat::kTuplesText: return "tuples-text";
  }
  return "csv";
}

json wide_json(Wide v) {
  const Wide lim = std::numeric_limits<std::int64_t>::max();
  if (v <= lim && v >= -lim) return static_cast<std::int64_t>(v);
  return to_string(v);
}

std::string format_g6(double v) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.6g", v);
  return buf.data();
}

}  // namespace

json to_json(const RunConfig& config) {
  json j;
  j["command"] = config.command;
  j["primes"] = config.primes;
  j["pmin"] = config.pmin ? json(*config.pmin) : json(nullptr);
  j["pmax"] = config.pmax ? json(*config.pmax) : json(nullptr);
  j["k"] = config.k;
  j["m"] = config.m;
  j["output"] = config.output;
  j["format"] = format_name(config.format);
  j["workers"] = config.workers;
  j["max_tuples"] = config.budget.max_tuples ? json(*config.budget.max_tuples) : json(nullptr);
  j["max_time_ms"] =
      config.budget.max_time ? json(config.budget.max_time->count()) : json(nullptr);
  j["verify"] = config.verify;
  j["timing"] = config.timing;
  j["seed"] = config.seed;
  return j;
}

std::vector<std::uint64_t> odd_primes_between(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = std::max<std::uint64_t>(lo, 3); n <= hi; ++n) {
    if (n % 2 == 1 && is_prime(n)) out.push_back(n);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::optional<std::int64_t> tabulated_n3(std::uint64_t p) {
  static constexpr std::array<std::pair<std::uint64_t, std::int64_t>, 14> kTable = {{
      {5, 2},       {7, 11},      {11, 60},     {13, 110},   {17, 280},
      {19, 407},    {23, 770},    {29, 1638},   {31, 2031},  {37, 3572},
      {41, 4940},   {43, 5739},   {101, 80850}, {229, 97472},
  }};
  for (const auto& [q, n] : kTable) {
    if (q == p) return n;
  }
  return std::nullopt;
}

TableRow table_row(const PrimeField& field, const RunOptions& options) {
  TableRow row;
  row.p = field.p();
  row.class_mod3 = static_cast<int>(field.p() % 3);
  const CountReport counted = count(3, 3, field, options);
  row.n3_brute = counted.brute_count;
  row.n3_formula = counted.closed_form;
  row.elapsed_ms = std::chrono::duration<double, std::milli>(counted.elapsed).count();
  if (row.class_mod3 == 1) {
    row.a = represent(field).a;
    row.error_term = (*row.a + 1) / 3;
  }
  if (const auto tab = tabulated_n3(row.p); tab && *tab != row.n3_brute) {
    row.note = "tabulated value " + std::to_string(*tab) + " disagrees with enumeration " +
               std::to_string(row.n3_brute);
    if (row.n3_formula) row.note += " and formula " + to_string(*row.n3_formula);
  }
  return row;
}

std::vector<TableRow> table_rows(std::span<const std::uint64_t> primes, const RunOptions& options) {
  std::vector<TableRow> rows;
  rows.reserve(primes.size());
  for (const auto p : primes) {
    rows.push_back(table_row(make_field(static_cast<std::int64_t>(p)), options));
  }
  return rows;
}

void write_table_csv(std::ostream& out, std::span<const TableRow> rows, bool timing) {
  out << kTableHeader << '\n';
  for (const auto& r : rows) {
    out << r.p << ',' << r.class_mod3 << ',' << r.n3_brute << ',';
    if (r.n3_formula) out << to_string(*r.n3_formula);
    out << ',';
    if (r.a) out << *r.a;
    out << ',';
    if (r.error_term) out << *r.error_term;
    out << ',';
    if (timing) {
      std::array<char, 32> buf{};
      std::snprintf(buf.data(), buf.size(), "%.3f", r.elapsed_ms);
      out << buf.data();
    }
    out << ',' << r.note << '\n';
  }
}

void write_tuples(std::ostream& out, std::span<const TupleSet> tuples) {
  for (const auto& t : tuples) out << t.str() << '\n';
}

void write_plotdata(std::ostream& out, std::span<const TableRow> rows, PlotScale scale) {
  if (scale == PlotScale::kLinear) {
    out << "p,n3\n";
    for (const auto& r : rows) out << r.p << ',' << r.n3_brute << '\n';
    return;
  }
  out << "ln_p,ln_n3\n";
  for (const auto& r : rows) {
    if (r.n3_brute <= 0) continue;
    out << format_g6(std::log(static_cast<double>(r.p))) << ','
        << format_g6(std::log(static_cast<double>(r.n3_brute))) << '\n';
  }
}

// ---------------------------------------------------------------------------

std::optional<Suite> parse_suite(std::string_view name) {
  static constexpr std::array<std::pair<std::string_view, Suite>, 8> kNames = {{
      {"charsums", Suite::kCharSums},
      {"gauss", Suite::kGauss},
      {"cubecount", Suite::kCubeCount},
      {"paircount", Suite::kPairCount},
      {"patterns", Suite::kPatterns},
      {"weil", Suite::kWeil},
      {"n3", Suite::kN3},
      {"all", Suite::kAll},
  }};
  for (const auto& [n, s] : kNames) {
    if (n == name) return s;
  }
  return std::nullopt;
}

namespace {

// Accumulates checks for one prime; merged in ascending p afterwards.
struct Tally {
  std::uint64_t checks = 0;
  std::uint64_t passed = 0;
  std::optional<std::string> counterexample;

  void record(bool ok, const std::string& what) {
    ++checks;
    if (ok) {
      ++passed;
    } else if (!counterexample) {
      counterexample = what;
    }
  }
  template <class Describe>
  void record_lazy(bool ok, Describe&& describe) {
    ++checks;
    if (ok) {
      ++passed;
    } else if (!counterexample) {
      counterexample = describe();
    }
  }
};

template <class PerPrime>
SuiteResult sweep(std::string name, const std::vector<std::uint64_t>& primes, unsigned workers,
                  PerPrime&& per_prime) {
  const auto tallies = parallel_map(primes.size(), workers, [&](std::size_t i) {
    Tally t;
    per_prime(make_field(static_cast<std::int64_t>(primes[i])), t);
    return t;
  });
  SuiteResult result;
  result.name = std::move(name);
  for (const auto& t : tallies) {
    result.checks += t.checks;
    result.passed += t.passed;
    if (!result.counterexample && t.counterexample) result.counterexample = t.counterexample;
  }
  return result;
}

std::string at(const PrimeField& f) { return " at p=" + std::to_string(f.p()); }

// Seeded draws with a portable mapping to ranges.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  std::uint64_t below(std::uint64_t n) { return rng_() % n; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

SuiteResult verify_char_sums(std::uint64_t pmax, unsigned workers) {
  return sweep("charsums", odd_primes_between(3, pmax), workers, [](const PrimeField& f, Tally& t) {
    const auto p = static_cast<std::int64_t>(f.p());
    for (std::int64_t a = 1; a < p; ++a) {
      for (std::int64_t b = 0; b < p; ++b) {
        const std::int64_t lin = linear_sum_brute(a, b, f);
        t.record_lazy(lin == 0, [&] {
          return "linear a=" + std::to_string(a) + " b=" + std::to_string(b) + at(f) +
                 " sum=" + std::to_string(lin);
        });
        for (std::int64_t c = 0; c < p; ++c) {
          const std::int64_t closed = quadratic_sum_closed(a, b, c, f);
          const std::int64_t brute = quadratic_sum_brute(a, b, c, f);
          t.record_lazy(closed == brute, [&] {
            return "quadratic a=" + std::to_string(a) + " b=" + std::to_string(b) +
                   " c=" + std::to_string(c) + at(f) + " closed=" + std::to_string(closed) +
                   " brute=" + std::to_string(brute);
          });
        }
      }
    }
    if (p >= 5) {
      const std::int64_t closed = cubic_sum_closed(f);
      const std::int64_t brute = cubic_sum_brute(f);
      t.record_lazy(closed == brute, [&] {
        return "cubic" + at(f) + " closed=" + std::to_string(closed) +
               " brute=" + std::to_string(brute);
      });
    }
  });
}

SuiteResult verify_gauss(std::uint64_t pmax, unsigned workers) {
  return sweep("gauss", odd_primes_between(3, pmax), workers, [](const PrimeField& f, Tally& t) {
    const auto p = static_cast<std::int64_t>(f.p());
    for (std::int64_t d = 1; d < p; ++d) {
      const auto candidates = gauss_candidates(d, f);
      const std::int64_t exact = brute_point_count(d, f);
      bool ok = std::find(candidates.begin(), candidates.end(), exact) != candidates.end();
      if (f.p() % 3 != 1) ok = ok && exact == p + 1;
      t.record_lazy(ok, [&] {
        return "D=" + std::to_string(d) + at(f) + " exact=" + std::to_string(exact);
      });
    }
  });
}

SuiteResult verify_cube_count(std::uint64_t pmax, unsigned workers) {
  SuiteResult result = sweep("cubecount", odd_primes_between(5, pmax), workers,
               [](const PrimeField& f, Tally& t) {
                 const CountReport r = cube_count(f, Verify::kOff);
                 t.record_lazy(*r.delta == 0, [&] {
                   return "cubes" + at(f) + " brute=" + std::to_string(r.brute_count) +
                          " formula=" + to_string(*r.closed_form);
                 });
               });
  result.note =
      "counts ordered triples of pairwise-distinct residues with abc = -1; the formula "
      "does not hold if repeated entries are allowed";
  return result;
}

SuiteResult verify_pair_count(std::uint64_t pmax, unsigned workers) {
  return sweep("paircount", odd_primes_between(3, pmax), workers,
               [](const PrimeField& f, Tally& t) {
                 const CountReport r = pair_count(f, Verify::kOff);
                 t.record_lazy(*r.delta == 0, [&] {
                   return "pairs" + at(f) + " brute=" + std::to_string(r.brute_count) +
                          " formula=" + to_string(*r.closed_form);
                 });
               });
}

namespace {

void check_pattern(const PatternSpec& spec, const PrimeField& f, Tally& t) {
  const DefectReport r = pattern_count(spec, f);
  const bool ok = r.defect_in_range() && pattern_bound_holds(r, f.p());
  t.record_lazy(ok, [&] {
    std::string s = "pattern k=" + std::to_string(r.k) + at(f) + " shifts=";
    for (const auto a : spec.shifts) s += std::to_string(a) + ";";
    s += " signs=";
    for (const auto e : spec.signs) s += std::to_string(e) + ";";
    return s + " exact=" + std::to_string(r.n_exact) +
           " defect*2^k=" + std::to_string(r.defect_scaled());
  });
}

constexpr std::array<std::uint64_t, 4> kRandomPatternPrimes = {13, 23, 101, 499};
constexpr std::array<std::uint64_t, 2> kWeilPrimes = {101, 499};
constexpr int kRandomTrials = 1000;

}  // namespace

SuiteResult verify_patterns(std::uint64_t pmax, std::uint64_t seed, unsigned workers) {
  // Exhaustive: ascending shift sets with k <= 3 and every sign vector.
  SuiteResult exhaustive = sweep(
      "patterns", odd_primes_between(3, std::min<std::uint64_t>(pmax, 31)), workers,
      [](const PrimeField& f, Tally& t) {
        const auto p = static_cast<std::int64_t>(f.p());
        for (int k = 1; k <= 3 && k <= p; ++k) {
          std::vector<std::int64_t> shifts(static_cast<std::size_t>(k));
          auto visit_sets = [&](auto&& self, int pos, std::int64_t lo) -> void {
            if (pos == k) {
              for (unsigned mask = 0; mask < (1U << k); ++mask) {
                PatternSpec spec{shifts, {}};
                for (int j = 0; j < k; ++j) spec.signs.push_back((mask >> j) & 1U ? -1 : 1);
                check_pattern(spec, f, t);
              }
              return;
            }
            for (std::int64_t a = lo; a < p; ++a) {
              shifts[static_cast<std::size_t>(pos)] = a;
              self(self, pos + 1, a + 1);
            }
          };
          visit_sets(visit_sets, 0, 0);
        }
      });

  std::vector<std::uint64_t> random_primes;
  for (const auto p : kRandomPatternPrimes) {
    if (p <= pmax) random_primes.push_back(p);
  }
  const SuiteResult randomized = sweep(
      "patterns", random_primes, workers, [seed](const PrimeField& f, Tally& t) {
        Draw draw(seed ^ f.p());
        for (int trial = 0; trial < kRandomTrials; ++trial) {
          const int k = 1 + static_cast<int>(draw.below(6));
          PatternSpec spec;
          while (spec.shifts.size() < static_cast<std::size_t>(k)) {
            const auto a = static_cast<std::int64_t>(draw.below(f.p()));
            if (std::find(spec.shifts.begin(), spec.shifts.end(), a) == spec.shifts.end()) {
              spec.shifts.push_back(a);
            }
          }
          for (int j = 0; j < k; ++j) spec.signs.push_back(draw.below(2) == 0 ? 1 : -1);
          check_pattern(spec, f, t);
        }
      });

  exhaustive.checks += randomized.checks;
  exhaustive.passed += randomized.passed;
  if (!exhaustive.counterexample) exhaustive.counterexample = randomized.counterexample;
  return exhaustive;
}

SuiteResult verify_weil(std::uint64_t pmax, std::uint64_t seed, unsigned workers) {
  std::vector<std::uint64_t> primes;
  for (const auto p : kWeilPrimes) {
    if (p <= pmax) primes.push_back(p);
  }
  return sweep("weil", primes, workers, [seed](const PrimeField& f, Tally& t) {
    Draw draw(seed ^ (f.p() * 0x9E3779B97F4A7C15ULL));
    for (int degree = 2; degree <= 6; ++degree) {
      int accepted = 0;
      while (accepted < kRandomTrials) {
        std::vector<Residue> coeffs(static_cast<std::size_t>(degree) + 1);
        for (auto& c : coeffs) c = draw.below(f.p());
        coeffs.back() = 1 + draw.below(f.p() - 1);
        const Polynomial poly(coeffs);
        if (is_constant_times_square(poly, f)) continue;
        ++accepted;
        const WeilReport r = weil_check(poly, f);
        t.record_lazy(r.applicable && r.holds, [&] {
          std::string s = "weil degree=" + std::to_string(degree) + at(f) + " coeffs=";
          for (const auto c : coeffs) s += std::to_string(c) + ";";
          return s + " sum=" + std::to_string(r.sum);
        });
      }
    }
  });
}

SuiteResult verify_n3(std::uint64_t pmax, unsigned workers) {
  return sweep("n3", odd_primes_between(5, pmax), workers, [](const PrimeField& f, Tally& t) {
    RunOptions options;
    options.verify = Verify::kOff;
    const CountReport r = count(3, 3, f, options);
    t.record_lazy(*r.delta == 0, [&] {
      return "N3" + at(f) + " brute=" + std::to_string(r.brute_count) +
             " formula=" + to_string(*r.closed_form);
    });
  });
}

std::vector<SuiteResult> run_verify(Suite suite, std::uint64_t pmax, std::uint64_t seed,
                                    unsigned workers) {
  std::vector<SuiteResult> out;
  const bool all = suite == Suite::kAll;
  if (all || suite == Suite::kCharSums) out.push_back(verify_char_sums(pmax, workers));
  if (all || suite == Suite::kGauss) out.push_back(verify_gauss(pmax, workers));
  if (all || suite == Suite::kCubeCount) out.push_back(verify_cube_count(pmax, workers));
  if (all || suite == Suite::kPairCount) out.push_back(verify_pair_count(pmax, workers));
  if (all || suite == Suite::kPatterns) out.push_back(verify_patterns(pmax, seed, workers));
  if (all || suite == Suite::kWeil) out.push_back(verify_weil(pmax, seed, workers));
  if (suite == Suite::kN3) out.push_back(verify_n3(pmax, workers));
  return out;
}

// ---------------------------------------------------------------------------

std::string decimal(const BigInt& v) { return v.str(); }

json to_json(const CountReport& report, bool timing) {
  json j;
  j["label"] = report.label;
  j["p"] = report.p;
  j["k"] = report.k;
  j["m"] = report.m;
  j["brute_count"] = report.brute_count;
  j["closed_form"] = report.closed_form ? wide_json(*report.closed_form) : json(nullptr);
  j["delta"] = report.delta ? wide_json(*report.delta) : json(nullptr);
  j["elapsed_ms"] =
      timing ? json(std::chrono::duration<double, std::milli>(report.elapsed).count())
             : json(nullptr);
  return j;
}

json to_json(const WitnessReport& report) {
  json j;
  std::vector<Residue> tuple(report.tuple.elements().begin(), report.tuple.elements().end());
  j["tuple"] = tuple;
  j["start"] = report.start;
  j["extension_trace"] = report.extension_trace;
  j["candidate_count"] = report.candidate_count;
  j["greedy"] = report.greedy;
  return j;
}

json to_json(const BoundSpec& spec) {
  json j;
  j["k"] = spec.k;
  j["m"] = spec.m;
  j["bound"] = decimal(spec.bound);
  j["three_bound"] = spec.three_bound ? json(decimal(*spec.three_bound)) : json(nullptr);
  j["diagonal_bound"] = spec.diagonal_bound ? json(decimal(*spec.diagonal_bound)) : json(nullptr);
  return j;
}

json to_json(const QuadRep& rep) { return json{{"a", rep.a}, {"b", rep.b}}; }

json to_json(const CurveCount& count) {
  return json{{"exact", count.exact}, {"candidates", count.candidates}};
}

json to_json(const SuiteResult& result) {
  json j;
  j["suite"] = result.name;
  j["checks"] = result.checks;
  j["passed"] = result.passed;
  j["ok"] = result.ok();
  j["counterexample"] = result.counterexample ? json(*result.counterexample) : json(nullptr);
  if (!result.note.empty()) j["note"] = result.note;
  return j;
}

json envelope(const RunConfig& config, json results, std::optional<double> elapsed_ms) {
  json j;
  j["command"] = config.command;
  j["config"] = to_json(config);
  j["results"] = std::move(results);
  j["elapsed_ms"] = elapsed_ms ? json(*elapsed_ms) : json(nullptr);
  return j;
}

}  // namespace fpdioph::report
