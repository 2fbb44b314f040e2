#include "doctest.h"

#include <filesystem>

#include "json.hpp"
#include "solbmc/bench.hpp"
#include "test_support.hpp"

using namespace solbmc;
using namespace solbmc::test;

namespace {

RunConfig base() {
  RunConfig cfg;
  cfg.solver.executable = SOLBMC_Z3;
  return cfg;
}

}  // namespace

TEST_CASE("suite manifest") {
  auto cases = load_suite(std::string(SOLBMC_BENCH_DIR) + "/suite");
  REQUIRE(cases.size() == 9);
  CHECK(cases[0].id == "FUNC_SAT");
  CHECK(cases[0].function == "func_sat");
  for (const BenchCase& c : cases) {
    CAPTURE(c.id);
    REQUIRE(c.category);
    CHECK(c.expects_counterexample == (c.id != "TC5"));
  }
}

TEST_CASE("suite finds every expected violation") {
  BenchReport r = run_benchmarks(std::string(SOLBMC_BENCH_DIR) + "/suite", base(), 4);
  REQUIRE(r.cases.size() == 9);
  for (const BenchCaseResult& c : r.cases) {
    CAPTURE(c.bench.id);
    CHECK(c.found);
    CHECK(c.replay_ok);
    CHECK(c.counterexample == c.bench.expects_counterexample);
    CHECK(c.passed);
  }
  std::string table = render_table(r);
  CHECK(table.find("9/9 cases as expected") != std::string::npos);
  nlohmann::json j = nlohmann::json::parse(render_json(r));
  CHECK(j["passed"] == 9);
}

TEST_CASE("safe variants verify successfully") {
  BenchReport r = run_benchmarks(std::string(SOLBMC_BENCH_DIR) + "/safe", base(), 4);
  CHECK(r.cases.size() == 9);
  CHECK(r.passed() == r.cases.size());
}

TEST_CASE("empty suite directory") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "solbmc_empty_suite";
  fs::create_directories(dir);
  BenchReport r = run_benchmarks(dir, base());
  CHECK(r.cases.empty());
  CHECK(r.passed() == 0);
  fs::remove_all(dir);
}
