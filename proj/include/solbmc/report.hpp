#ifndef SOLBMC_REPORT_HPP
#define SOLBMC_REPORT_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "solbmc/eval.hpp"
#include "solbmc/goto.hpp"
#include "solbmc/interpreter.hpp"
#include "solbmc/smt.hpp"
#include "solbmc/symex.hpp"

namespace solbmc {

enum class StepKind { Assignment, ViolatedProperty };

struct TraceStep {
  int number = 0;
  StepKind kind = StepKind::Assignment;
  SourceSpan location;
  std::size_t pc = 0;
  // Assignment
  std::string name;    // display name, "a[2]" for element stores
  std::string symbol;  // unique id
  SolType type;
  Value value;
  // ViolatedProperty
  Claim claim;
};

struct Trace {
  int claim = 0;
  std::vector<TraceStep> steps;
  NondetValues nondets;
  std::size_t violation_pc = 0;
};

/// Evaluates the VC's equations under `model` and returns the states on the
/// violating path. Throws ReplayMismatch when the model does not satisfy C
/// or does not violate the property.
Trace build_counterexample(const std::map<std::string, BigUint>& model, const SsaProgram& ssa, const Vc& vc,
                           const GotoProgram& program);

struct ReplayResult {
  bool confirmed = false;
  std::vector<int> failed_claims;
  bool blocked = false;
};

/// Re-executes the program with the trace's nondet values.
ReplayResult replay_trace(const Trace& trace, const GotoProgram& program);

enum class ClaimStatus { Holds, Violated, Unknown };

struct ClaimResult {
  Claim claim;
  ClaimStatus status = ClaimStatus::Unknown;
  std::optional<Trace> trace;
  std::string reason;
  std::optional<bool> replay_confirmed;
  double seconds = 0;
};

struct VerificationReport {
  std::string file;
  std::string function;
  std::vector<ClaimResult> claims;
  std::vector<Claim> findings;
  double seconds = 0;

  std::size_t count(ClaimStatus status) const;
};

/// 0 all claims hold and no findings; 1 violation or finding; 3 unknown.
int exit_code(const VerificationReport& report);

enum class OutputFormat { Human, Json };

using LocationText = std::function<std::string(const SourceSpan&)>;

std::string render(const VerificationReport& report, OutputFormat format, const LocationText& where);

}  // namespace solbmc

#endif  // SOLBMC_REPORT_HPP
