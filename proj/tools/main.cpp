// fpdioph: enumerate, count and certify k-Diophantine m-tuples over F_p.
//
// Exit codes: 0 success, 1 verification or witness failure, 2 usage error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "fpdioph/curve_count.hpp"
#include "fpdioph/error.hpp"
#include "fpdioph/tuples.hpp"
#include "report.hpp"

namespace {

using namespace fpdioph;
using report::json;
using report::RunConfig;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct CliState {
  RunConfig cfg;
  std::optional<std::uint64_t> p;
  std::string format = "auto";
  std::optional<std::uint64_t> max_tuples;
  std::optional<std::int64_t> max_time_ms;
  bool no_verify = false;
  bool no_timing = false;
  std::string suite = "all";
  std::string scale = "linear";
  bool above_bound = false;
  std::int64_t d = 1;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
      if (!*file_) raise(ErrorCode::kBadParameters, "cannot open " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoWitness:
    case ErrorCode::kOracleMismatch:
    case ErrorCode::kGaussMismatch:
      return kExitFailure;
    default:
      return kExitUsage;
  }
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

RunOptions run_options(const RunConfig& cfg) {
  RunOptions options;
  options.workers = cfg.workers;
  options.budget = cfg.budget;
  options.verify = cfg.verify ? Verify::kOn : Verify::kOff;
  return options;
}

PrimeField single_field(const CliState& s) {
  if (!s.p) raise(ErrorCode::kBadParameters, "--p is required");
  return make_field(static_cast<std::int64_t>(*s.p));
}

// Explicit --primes wins; otherwise the [pmin, pmax] range.
std::vector<std::uint64_t> prime_list(const RunConfig& cfg, std::uint64_t default_min) {
  if (!cfg.primes.empty()) {
    auto primes = cfg.primes;
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    return primes;
  }
  if (!cfg.pmax) return {};
  return report::odd_primes_between(cfg.pmin.value_or(default_min), *cfg.pmax);
}

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::optional<double> elapsed(const RunConfig& cfg, std::chrono::steady_clock::time_point t0) {
  if (!cfg.timing) return std::nullopt;
  return ms_since(t0);
}

// ---------------------------------------------------------------------------

int cmd_enumerate(const CliState& s) {
  const auto t0 = std::chrono::steady_clock::now();
  const PrimeField field = single_field(s);
  const auto tuples = enumerate(s.cfg.k, s.cfg.m, field, run_options(s.cfg));
  Output out(s.cfg.output);
  if (s.cfg.format == report::OutputFormat::kJson) {
    json list = json::array();
    for (const auto& t : tuples) {
      list.push_back(std::vector<Residue>(t.elements().begin(), t.elements().end()));
    }
    write_json(out.stream(), report::envelope(s.cfg, json{{"p", field.p()}, {"count", tuples.size()},
                                                          {"tuples", list}},
                                              elapsed(s.cfg, t0)));
  } else {
    report::write_tuples(out.stream(), tuples);
  }
  return kExitOk;
}

int cmd_count(const CliState& s) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::uint64_t> primes = prime_list(s.cfg, 3);
  if (s.p) primes.insert(primes.begin(), *s.p);
  if (primes.empty()) raise(ErrorCode::kBadParameters, "no primes given");

  std::vector<CountReport> reports;
  for (const auto p : primes) {
    reports.push_back(count(s.cfg.k, s.cfg.m, make_field(static_cast<std::int64_t>(p)),
                            run_options(s.cfg)));
  }
  Output out(s.cfg.output);
  if (s.cfg.format == report::OutputFormat::kCsv) {
    auto& o = out.stream();
    o << "p,k,m,brute_count,closed_form,delta,elapsed_ms\n";
    for (const auto& r : reports) {
      o << r.p << ',' << r.k << ',' << r.m << ',' << r.brute_count << ',';
      if (r.closed_form) o << to_string(*r.closed_form);
      o << ',';
      if (r.delta) o << to_string(*r.delta);
      o << ',';
      if (s.cfg.timing) o << std::chrono::duration<double, std::milli>(r.elapsed).count();
      o << '\n';
    }
  } else {
    json results = json::array();
    for (const auto& r : reports) results.push_back(report::to_json(r, s.cfg.timing));
    write_json(out.stream(), report::envelope(s.cfg, results, elapsed(s.cfg, t0)));
  }
  return kExitOk;
}

int cmd_table1(const CliState& s) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto primes = prime_list(s.cfg, 3);
  if (primes.empty()) raise(ErrorCode::kBadParameters, "empty prime list");
  const auto rows = report::table_rows(primes, run_options(s.cfg));
  Output out(s.cfg.output);
  if (s.cfg.format == report::OutputFormat::kJson) {
    json results = json::array();
    for (const auto& r : rows) {
      results.push_back(json{
          {"p", r.p},
          {"class_mod3", r.class_mod3},
          {"n3_brute", r.n3_brute},
          {"n3_formula", r.n3_formula ? json(to_string(*r.n3_formula)) : json(nullptr)},
          {"a", r.a ? json(*r.a) : json(nullptr)},
          {"error_term", r.error_term ? json(*r.error_term) : json(nullptr)},
          {"elapsed_ms", s.cfg.timing ? json(r.elapsed_ms) : json(nullptr)},
          {"note", r.note},
      });
    }
    write_json(out.stream(), report::envelope(s.cfg, results, elapsed(s.cfg, t0)));
  } else {
    report::write_table_csv(out.stream(), rows, s.cfg.timing);
  }
  return kExitOk;
}

int cmd_verify(const CliState& s) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto suite = report::parse_suite(s.suite);
  if (!suite) raise(ErrorCode::kBadParameters, "unknown suite '" + s.suite + "'");
  if (!s.cfg.pmax) raise(ErrorCode::kBadParameters, "--pmax is required");
  const auto results = report::run_verify(*suite, *s.cfg.pmax, s.cfg.seed, s.cfg.workers);

  bool ok = true;
  json summary = json::array();
  for (const auto& r : results) {
    summary.push_back(report::to_json(r));
    if (!r.ok()) {
      if (ok) std::cerr << "counterexample (" << r.name << "): " << *r.counterexample << '\n';
      ok = false;
    }
  }
  Output out(s.cfg.output);
  write_json(out.stream(), report::envelope(s.cfg, summary, elapsed(s.cfg, t0)));
  return ok ? kExitOk : kExitFailure;
}

int cmd_plotdata(const CliState& s) {
  report::PlotScale scale = report::PlotScale::kLinear;
  if (s.scale == "loglog") {
    scale = report::PlotScale::kLogLog;
  } else if (s.scale != "linear") {
    raise(ErrorCode::kBadParameters, "scale must be linear or loglog");
  }
  const auto primes = prime_list(s.cfg, 5);
  const auto rows = report::table_rows(primes, run_options(s.cfg));
  Output out(s.cfg.output);
  report::write_plotdata(out.stream(), rows, scale);
  return kExitOk;
}

int cmd_witness(const CliState& s) {
  const auto t0 = std::chrono::steady_clock::now();
  const BoundSpec bound = existence_bound(s.cfg.k, s.cfg.m);
  std::uint64_t p = 0;
  if (s.above_bound) {
    if (bound.bound >= PrimeField::kMaxModulus) {
      raise(ErrorCode::kModulusTooLarge, "bound " + report::decimal(bound.bound) +
                                             " is beyond the supported modulus");
    }
    p = next_prime(bound.bound.convert_to<std::uint64_t>());
  } else if (s.p) {
    p = *s.p;
  } else {
    raise(ErrorCode::kBadParameters, "give --p or --above-bound");
  }
  const PrimeField field = make_field(static_cast<std::int64_t>(p));

  json results;
  results["bound"] = report::decimal(bound.bound);
  results["prime"] = p;
  results["above_bound"] = BigInt(p) > bound.bound;
  try {
    results["witness"] = report::to_json(find_witness(s.cfg.k, s.cfg.m, field));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoWitness) throw;
    std::cerr << e.what() << " (p=" << p << ", bound=" << report::decimal(bound.bound) << ")\n";
    return kExitFailure;
  }
  Output out(s.cfg.output);
  write_json(out.stream(), report::envelope(s.cfg, results, elapsed(s.cfg, t0)));
  return kExitOk;
}

int cmd_represent(const CliState& s) {
  const PrimeField field = single_field(s);
  Output out(s.cfg.output);
  json results = report::to_json(represent(field));
  results["p"] = field.p();
  write_json(out.stream(), report::envelope(s.cfg, results, std::nullopt));
  return kExitOk;
}

int cmd_curve(const CliState& s) {
  const PrimeField field = single_field(s);
  const CurveCount result = verify_gauss(s.d, field);
  json results = report::to_json(result);
  results["p"] = field.p();
  results["D"] = s.d;
  results["class"] =
      field.p() % 3 == 1 ? json(std::string(to_string(classify(s.d, field)))) : json(nullptr);
  Output out(s.cfg.output);
  write_json(out.stream(), report::envelope(s.cfg, results, std::nullopt));
  return kExitOk;
}

int cmd_bound(const CliState& s) {
  Output out(s.cfg.output);
  write_json(out.stream(),
             report::envelope(s.cfg, report::to_json(existence_bound(s.cfg.k, s.cfg.m)),
                              std::nullopt));
  return kExitOk;
}

void finalize(CliState& s, const std::string& command) {
  s.cfg.command = command;
  if (s.max_tuples) s.cfg.budget.max_tuples = *s.max_tuples;
  if (s.max_time_ms) s.cfg.budget.max_time = std::chrono::milliseconds(*s.max_time_ms);
  s.cfg.verify = !s.no_verify;
  s.cfg.timing = !s.no_timing;
  if (s.format == "csv") {
    s.cfg.format = report::OutputFormat::kCsv;
  } else if (s.format == "json") {
    s.cfg.format = report::OutputFormat::kJson;
  } else if (s.format == "tuples-text") {
    s.cfg.format = report::OutputFormat::kTuplesText;
  } else if (s.format == "auto") {
    s.cfg.format = command == "enumerate"                        ? report::OutputFormat::kTuplesText
                   : (command == "table1" || command == "plotdata") ? report::OutputFormat::kCsv
                                                                    : report::OutputFormat::kJson;
  } else {
    raise(ErrorCode::kBadParameters, "unknown format '" + s.format + "'");
  }
  if (s.p) {
    if (*s.p < 3 || !is_prime(*s.p)) {
      raise(ErrorCode::kNotOddPrime, std::to_string(*s.p) + " is not an odd prime");
    }
  }
  report::validate(s.cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate, count and certify k-Diophantine m-tuples over prime fields"};
  app.set_config("--config", "", "TOML/INI configuration file; command-line flags take precedence");
  app.require_subcommand(1);

  CliState s;
  s.cfg.workers = std::max(1U, std::thread::hardware_concurrency());

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out,-o", s.cfg.output, "Output path, '-' for stdout");
    sub->add_option("--format", s.format, "csv, json, tuples-text or auto");
    sub->add_option("--workers,-j", s.cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--max-tuples", s.max_tuples, "Fail once this many tuples are produced");
    sub->add_option("--max-time-ms", s.max_time_ms, "Fail after this much wall time");
    sub->add_flag("--no-verify", s.no_verify, "Skip closed-form cross-checks");
    sub->add_flag("--no-timing", s.no_timing, "Omit timings so output is reproducible");
  };
  auto add_primes = [&](CLI::App* sub) {
    sub->add_option("--primes", s.cfg.primes, "Explicit prime list")->delimiter(',');
    sub->add_option("--pmin", s.cfg.pmin, "Smallest prime of the range");
    sub->add_option("--pmax", s.cfg.pmax, "Largest prime of the range");
  };
  auto add_km = [&](CLI::App* sub) {
    sub->add_option("--k", s.cfg.k, "Product size k");
    sub->add_option("--m", s.cfg.m, "Tuple size m");
  };

  auto* enumerate_cmd = app.add_subcommand("enumerate", "List all k-Diophantine m-tuples in F_p");
  enumerate_cmd->add_option("--p", s.p, "Prime modulus")->required();
  add_km(enumerate_cmd);
  add_common(enumerate_cmd);

  auto* count_cmd = app.add_subcommand("count", "Count k-Diophantine m-tuples");
  count_cmd->add_option("--p", s.p, "Prime modulus");
  add_primes(count_cmd);
  add_km(count_cmd);
  add_common(count_cmd);

  auto* table_cmd = app.add_subcommand("table1", "N3(p) by enumeration and closed form");
  add_primes(table_cmd);
  add_common(table_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Run dual-evaluation checks");
  verify_cmd->add_option("--suite", s.suite,
                         "charsums, gauss, cubecount, paircount, patterns, weil, n3 or all");
  verify_cmd->add_option("--pmax", s.cfg.pmax, "Largest prime checked")->required();
  verify_cmd->add_option("--seed", s.cfg.seed, "Seed for randomized suites");
  add_common(verify_cmd);

  auto* plot_cmd = app.add_subcommand("plotdata", "N3(p) series for plotting");
  add_primes(plot_cmd);
  plot_cmd->add_option("--scale", s.scale, "linear or loglog");
  add_common(plot_cmd);

  auto* witness_cmd = app.add_subcommand("witness", "Find a k-Diophantine m-tuple");
  witness_cmd->add_option("--p", s.p, "Prime modulus");
  witness_cmd->add_flag("--above-bound", s.above_bound,
                        "Use the smallest prime above the existence bound");
  add_km(witness_cmd);
  add_common(witness_cmd);

  auto* represent_cmd = app.add_subcommand("represent", "p = a^2 + 3b^2 with a = 2 mod 3");
  represent_cmd->add_option("--p", s.p, "Prime modulus")->required();
  add_common(represent_cmd);

  auto* curve_cmd = app.add_subcommand("curve", "Point count of y^2 = x^3 + D against Gauss");
  curve_cmd->add_option("--p", s.p, "Prime modulus")->required();
  curve_cmd->add_option("--d", s.d, "Constant term D");
  add_common(curve_cmd);

  auto* bound_cmd = app.add_subcommand("bound", "Existence bounds on p for (k, m)");
  add_km(bound_cmd);
  add_common(bound_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    finalize(s, command);
    if (command == "enumerate") return cmd_enumerate(s);
    if (command == "count") return cmd_count(s);
    if (command == "table1") return cmd_table1(s);
    if (command == "verify") return cmd_verify(s);
    if (command == "plotdata") return cmd_plotdata(s);
    if (command == "witness") return cmd_witness(s);
    if (command == "represent") return cmd_represent(s);
    if (command == "curve") return cmd_curve(s);
    if (command == "bound") return cmd_bound(s);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
