#pragma once

// Report emission for the fpdioph command-line tool: the N3 table, tuple
// listings, plot data, verification sweeps and JSON encodings of the core
// result types.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "fpdioph/curve_count.hpp"
#include "fpdioph/tuples.hpp"

namespace fpdioph::report {

using json = nlohmann::json;

enum class OutputFormat { kCsv, kJson, kTuplesText };

struct RunConfig {
  std::string command;
  std::vector<std::uint64_t> primes;  // explicit list, or filled from the range
  std::optional<std::uint64_t> pmin;
  std::optional<std::uint64_t> pmax;
  int k = 3;
  int m = 3;
  std::string output = "-";
  OutputFormat format = OutputFormat::kCsv;
  unsigned workers = 1;
  Budget budget;
  bool verify = true;
  bool timing = true;
  std::uint64_t seed = kDefaultSeed;

  static constexpr std::uint64_t kDefaultSeed = 20240917;
};

// Throws kBadParameters / kNotOddPrime / kKTooLarge on a malformed config.
void validate(const RunConfig& config);

json to_json(const RunConfig& config);

// Odd primes in [lo, hi], ascending.
std::vector<std::uint64_t> odd_primes_between(std::uint64_t lo, std::uint64_t hi);

// ---- N3 table --------------------------------------------------------------

struct TableRow {
  std::uint64_t p = 0;
  int class_mod3 = 0;
  std::int64_t n3_brute = 0;
  std::optional<Wide> n3_formula;
  std::optional<std::int64_t> a;
  std::optional<std::int64_t> error_term;
  double elapsed_ms = 0;
  std::string note;
};

// Previously tabulated N3 values, used to flag disagreements in the note
// column. Only primes that were tabulated have an entry.
std::optional<std::int64_t> tabulated_n3(std::uint64_t p);

TableRow table_row(const PrimeField& field, const RunOptions& options);
std::vector<TableRow> table_rows(std::span<const std::uint64_t> primes, const RunOptions& options);

inline constexpr const char* kTableHeader =
    "p,class_mod3,n3_brute,n3_formula,a,error_term,elapsed_ms,note";

// elapsed_ms is left empty when timing is false so output is reproducible.
void write_table_csv(std::ostream& out, std::span<const TableRow> rows, bool timing);

// ---- Tuples and plot data --------------------------------------------------

void write_tuples(std::ostream& out, std::span<const TupleSet> tuples);

enum class PlotScale { kLinear, kLogLog };

// "p,n3" or "ln_p,ln_n3" (natural log, 6 significant digits). Rows with a
// zero count are dropped from the log-log form.
void write_plotdata(std::ostream& out, std::span<const TableRow> rows, PlotScale scale);

// ---- Verification sweeps ---------------------------------------------------

enum class Suite { kCharSums, kGauss, kCubeCount, kPairCount, kPatterns, kWeil, kN3, kAll };

std::optional<Suite> parse_suite(std::string_view name);

struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t passed = 0;
  std::optional<std::string> counterexample;
  std::string note;  // interpretation caveats, empty if none

  bool ok() const noexcept { return checks == passed; }
};

// Every dual-evaluation check for primes up to pmax (inclusive). kAll runs
// every suite except kN3, whose cost grows as p^3.
std::vector<SuiteResult> run_verify(Suite suite, std::uint64_t pmax, std::uint64_t seed,
                                    unsigned workers);

SuiteResult verify_char_sums(std::uint64_t pmax, unsigned workers);
SuiteResult verify_gauss(std::uint64_t pmax, unsigned workers);
SuiteResult verify_cube_count(std::uint64_t pmax, unsigned workers);
SuiteResult verify_pair_count(std::uint64_t pmax, unsigned workers);
SuiteResult verify_patterns(std::uint64_t pmax, std::uint64_t seed, unsigned workers);
SuiteResult verify_weil(std::uint64_t pmax, std::uint64_t seed, unsigned workers);
SuiteResult verify_n3(std::uint64_t pmax, unsigned workers);

// ---- JSON encodings --------------------------------------------------------

json to_json(const CountReport& report, bool timing);
json to_json(const WitnessReport& report);
json to_json(const BoundSpec& spec);
json to_json(const QuadRep& rep);
json to_json(const CurveCount& count);
json to_json(const SuiteResult& result);

std::string decimal(const BigInt& v);

// {command, config, results, elapsed_ms}
json envelope(const RunConfig& config, json results, std::optional<double> elapsed_ms);

}  // namespace fpdioph::report
