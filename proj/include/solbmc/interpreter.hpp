#ifndef SOLBMC_INTERPRETER_HPP
#define SOLBMC_INTERPRETER_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "solbmc/eval.hpp"
#include "solbmc/goto.hpp"

namespace solbmc {

/// Nondet values keyed by (instruction index, pre-order ordinal).
using NondetValues = std::map<std::pair<std::size_t, unsigned>, BigUint>;

struct ExecutionResult {
  std::vector<int> failed_claims;  // in the order the failing asserts ran
  std::vector<std::size_t> failed_pcs;
  bool blocked = false;            // an assumption was false
  std::map<std::string, Value> state;
};

/// Runs the acyclic program concretely. Asserts that fail are recorded and
/// execution continues; a false assumption stops it.
ExecutionResult interpret(const GotoProgram& p, const NondetValues& nondets);

}  // namespace solbmc

#endif  // SOLBMC_INTERPRETER_HPP
