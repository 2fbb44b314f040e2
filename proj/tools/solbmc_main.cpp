#include <iostream>

#include "CLI11.hpp"
#include "solbmc/error.hpp"
#include "solbmc/verify.hpp"

int main(int argc, char** argv) {
  using namespace solbmc;
  CLI::App app{"Bounded model checker for Solidity compact JSON ASTs"};
  RunConfig cfg;
  std::string source;
  std::string format = "human";
  std::vector<std::string> solver_args;
  app.add_option("ast", cfg.ast_path, "solc --ast-compact-json output")->required()->check(CLI::ExistingFile);
  app.add_option("--function", cfg.function, "Entry function")->required();
  app.add_option("--source", source, "Original .sol file, for line numbers")->check(CLI::ExistingFile);
  app.add_option("--unwind", cfg.unwind, "Loop unwinding bound")->capture_default_str();
  app.add_flag("--unwinding-assertions", cfg.unwinding_assertions, "Check that the bound is sufficient");
  bool no_overflow = false, no_bounds = false, no_div = false, no_tx = false, no_simplify = false, no_replay = false;
  app.add_flag("--no-overflow-check", no_overflow, "Skip overflow and underflow claims");
  app.add_flag("--no-bounds-check", no_bounds, "Skip array bounds claims");
  app.add_flag("--no-div-check", no_div, "Skip division by zero claims");
  app.add_flag("--no-tx-origin-check", no_tx, "Skip tx.origin findings");
  app.add_flag("--no-simplify", no_simplify, "Disable constant propagation");
  app.add_flag("--no-replay", no_replay, "Skip concrete replay of counterexamples");
  app.add_option("--solver", cfg.solver.executable, "SMT-LIB2 solver executable")->capture_default_str();
  app.add_option("--solver-arg", solver_args, "Extra solver argument (repeatable)");
  app.add_option("--timeout", cfg.solver.timeout_seconds, "Per-claim solver timeout in seconds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  std::string smt2_dir;
  app.add_option("--smt2-out", smt2_dir, "Write one SMT-LIB2 script per claim into DIR");
  app.add_flag("--show-ssa", cfg.show_ssa, "Print the SSA equations");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "json"}))->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Claims solved in parallel")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_flag("--stop-on-fail", cfg.stop_on_fail, "Stop at the first violated claim");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  cfg.overflow_check = !no_overflow;
  cfg.bounds_check = !no_bounds;
  cfg.div_check = !no_div;
  cfg.tx_origin_check = !no_tx;
  cfg.constant_propagation = !no_simplify;
  cfg.replay = !no_replay;
  cfg.solver.args = solver_args;
  cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Human;
  if (!source.empty()) cfg.source_path = source;
  if (!smt2_dir.empty()) cfg.smt2_dir = smt2_dir;

  std::optional<AstRoot> root;
  try {
    root = load_ast_file(cfg.ast_path, cfg.source_path);
    PreparedRun run = prepare(*root, cfg);
    if (cfg.show_ssa) std::cout << show_ssa(run.ssa, true) << "\n";
    VerificationReport report = verify(run, cfg);
    std::cout << render(report, cfg.format, [&](const SourceSpan& s) { return run.root.location_text(s); });
    return exit_code(report);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what();
    if (e.location() && root) std::cerr << " at " << root->location_text(*e.location());
    std::cerr << "\n";
    bool solver_side = e.kind() == ErrorKind::SolverSpawn || e.kind() == ErrorKind::ModelParse;
    return solver_side ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
