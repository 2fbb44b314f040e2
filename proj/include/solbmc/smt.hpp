#ifndef SOLBMC_SMT_HPP
#define SOLBMC_SMT_HPP

#include <map>
#include <string>
#include <vector>

#include "solbmc/symex.hpp"

namespace solbmc {

struct SmtScript {
  std::string logic;  // QF_BV or QF_ABV
  std::vector<std::pair<std::string, SolType>> declarations;  // "base#v" in first-use order
  std::string text;
};

/// `(_ BitVec w)`, `Bool`, or `(Array (_ BitVec 256) elem)`.
std::string smt_sort(const SolType& type);
std::string smt_expr(const IrExpr& e);

SmtScript encode(const SsaProgram& ssa, const Vc& vc);

enum class VerdictKind { Sat, Unsat, Unknown };

struct SolverVerdict {
  VerdictKind kind = VerdictKind::Unknown;
  /// Scalar model values keyed by "base#v".
  std::map<std::string, BigUint> model;
  std::string reason;  // Unknown: "timeout" or solver output
};

struct SolverConfig {
  std::string executable;
  std::vector<std::string> args;
  double timeout_seconds = 60;
};

/// SOLBMC_SOLVER if set, otherwise "z3" looked up on PATH.
std::string default_solver();

SolverVerdict solve(const SmtScript& script, const SolverConfig& config);
SolverVerdict parse_solver_output(const std::string& output);

}  // namespace solbmc

#endif  // SOLBMC_SMT_HPP
