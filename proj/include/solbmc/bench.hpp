#ifndef SOLBMC_BENCH_HPP
#define SOLBMC_BENCH_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "solbmc/verify.hpp"

namespace solbmc {

enum class ExpectedVerdict { Violated, Finding, Successful };

struct BenchCase {
  std::string id;
  std::filesystem::path dir;  // holds contract.sol, ast.json, expect.toml
  std::string function;
  ExpectedVerdict verdict = ExpectedVerdict::Violated;
  std::optional<ClaimCategory> category;  // none for successful cases
  bool expects_counterexample = false;
};

/// Parses `dir/expect.toml`.
BenchCase load_case(const std::filesystem::path& dir);
/// Every subdirectory with an expect.toml, ordered by id.
std::vector<BenchCase> load_suite(const std::filesystem::path& suite_dir);

struct BenchCaseResult {
  BenchCase bench;
  bool found = false;           // expected violation/finding reported (or success for safe cases)
  bool counterexample = false;  // trace produced for the expected category
  bool replay_ok = true;        // every trace replayed to its claim
  bool passed = false;
  double seconds = 0;
  std::string observed;  // verdict line or error text
  VerificationReport report;
};

struct BenchReport {
  std::vector<BenchCaseResult> cases;
  double seconds = 0;

  std::size_t passed() const;
};

BenchCaseResult run_case(const BenchCase& bench, const RunConfig& base);
BenchReport run_benchmarks(const std::filesystem::path& suite_dir, const RunConfig& base, unsigned parallel = 1);

/// Found/CE table, one row per case.
std::string render_table(const BenchReport& report);
std::string render_json(const BenchReport& report);

}  // namespace solbmc

#endif  // SOLBMC_BENCH_HPP
