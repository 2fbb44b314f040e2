#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "solbmc/bench.hpp"
#include "solbmc/error.hpp"

int main(int argc, char** argv) {
  using namespace solbmc;
  CLI::App app{"Run a benchmark suite of contracts with expected verdicts"};
  std::string suite;
  std::string json_out;
  unsigned parallel = 1;
  RunConfig cfg;
  app.add_option("suite", suite, "Directory of cases (one subdirectory each)")->required()->check(CLI::ExistingDirectory);
  app.add_option("--solver", cfg.solver.executable, "SMT-LIB2 solver executable")->capture_default_str();
  app.add_option("--timeout", cfg.solver.timeout_seconds, "Per-claim timeout in seconds")->capture_default_str();
  app.add_option("--unwind", cfg.unwind, "Loop unwinding bound")->capture_default_str();
  app.add_option("--parallel", parallel, "Cases run concurrently")->capture_default_str();
  app.add_option("--json", json_out, "Write the machine-readable summary to FILE");
  CLI11_PARSE(app, argc, argv);
  try {
    BenchReport report = run_benchmarks(suite, cfg, parallel);
    std::cout << render_table(report);
    if (!json_out.empty()) std::ofstream(json_out) << render_json(report);
    return report.passed() == report.cases.size() ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return 2;
  }
}
