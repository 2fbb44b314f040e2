#ifndef SOLBMC_VERIFY_HPP
#define SOLBMC_VERIFY_HPP

#include <optional>
#include <string>

#include "solbmc/ast.hpp"
#include "solbmc/goto.hpp"
#include "solbmc/report.hpp"
#include "solbmc/smt.hpp"
#include "solbmc/symex.hpp"

namespace solbmc {

struct RunConfig {
  std::string ast_path;
  std::optional<std::string> source_path;
  std::string function;
  unsigned unwind = kDefaultUnwind;
  bool unwinding_assertions = false;
  bool overflow_check = true;
  bool bounds_check = true;
  bool div_check = true;
  bool tx_origin_check = true;
  SolverConfig solver{default_solver(), {}, 60};
  OutputFormat format = OutputFormat::Human;
  std::optional<std::string> smt2_dir;
  bool show_ssa = false;
  unsigned jobs = 1;
  bool stop_on_fail = false;
  bool constant_propagation = true;
  bool replay = true;
};

/// Everything up to (not including) solving.
struct PreparedRun {
  AstRoot root;
  GotoProgram program;  // instrumented and unwound
  SsaProgram ssa;
  std::vector<Claim> findings;
};

PreparedRun prepare(AstRoot root, const RunConfig& config);
PreparedRun prepare(const RunConfig& config);

/// Solves every claim of a prepared run.
VerificationReport verify(const PreparedRun& run, const RunConfig& config);

VerificationReport run_verification(const RunConfig& config);

}  // namespace solbmc

#endif  // SOLBMC_VERIFY_HPP
