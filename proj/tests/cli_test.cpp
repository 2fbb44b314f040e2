#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>

#include "test_support.hpp"

using namespace solbmc::test;

namespace {

struct Output {
  int status = -1;
  std::string text;
};

Output run_cli(const std::string& args) {
  std::string cmd = std::string(SOLBMC_CLI) + " " + args + " 2>&1";
  Output out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.text.append(buf.data(), n);
  int raw = pclose(pipe);
  out.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

std::string solver_flag() { return std::string("--solver ") + SOLBMC_Z3; }

std::string bench_args(const std::string& id, const std::string& fn, bool with_solver = true) {
  std::string dir = bench_case("suite", id);
  return dir + "/ast.json --source " + dir + "/contract.sol --function " + fn + (with_solver ? " " + solver_flag() : "");
}

}  // namespace

TEST_CASE("empty function verifies successfully") {
  Output o = run_cli(fixture("empty_fn.json") + " --function f " + solver_flag());
  CHECK(o.status == 0);
  CHECK(o.text.find("VERIFICATION SUCCESSFUL") != std::string::npos);
}

TEST_CASE("func_sat from the command line") {
  Output o = run_cli(bench_args("FUNC_SAT", "func_sat"));
  CHECK(o.status == 1);
  CHECK(o.text.find("y = 240 (uint8)") != std::string::npos);
  CHECK(o.text.find("contract.sol:19") != std::string::npos);
  CHECK(o.text.find("Replay: confirmed") != std::string::npos);
  CHECK(o.text.find("VERIFICATION FAILED") != std::string::npos);
}

TEST_CASE("disabling checks removes instrumented claims") {
  Output o = run_cli(bench_args("TC1", "deposit") + " --no-overflow-check");
  CHECK(o.status == 0);
  CHECK(o.text.find("VERIFICATION SUCCESSFUL") != std::string::npos);
}

TEST_CASE("json output and ssa dump") {
  Output j = run_cli(bench_args("FUNC_SAT", "func_sat") + " --format json");
  CHECK(j.status == 1);
  CHECK(j.text.find("\"summary\"") != std::string::npos);

  Output s = run_cli(bench_args("FUNC_SAT", "func_sat") + " --show-ssa");
  CHECK(s.text.find(read_file(std::string(SOLBMC_GOLDEN_DIR) + "/func_sat.ssa")) != std::string::npos);
}

TEST_CASE("smt2 scripts are written per claim") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "solbmc_cli_smt2";
  fs::remove_all(dir);
  Output o = run_cli(bench_args("FUNC_SAT", "func_sat") + " --smt2-out " + dir.string());
  CHECK(o.status == 1);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) files += e.path().extension() == ".smt2";
  CHECK(files == 3);
  CHECK(read_file((dir / "claim3.smt2").string()).find("(assert false)") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(run_cli("").status == 2);
  CHECK(run_cli(fixture("empty_fn.json") + " --function missing").status == 2);
  CHECK(run_cli("/nonexistent/ast.json --function f").status == 2);
  Output o = run_cli(fixture("calls.json") + " --function recurse " + solver_flag());
  CHECK(o.status == 2);
  CHECK(o.text.find("RecursionUnsupported") != std::string::npos);
}

TEST_CASE("solver failures exit with 3") {
  Output o = run_cli(bench_args("FUNC_SAT", "func_sat", false) + " --solver /nonexistent/solver-binary");
  CHECK(o.status == 3);
}
