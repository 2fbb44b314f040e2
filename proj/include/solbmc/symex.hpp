#ifndef SOLBMC_SYMEX_HPP
#define SOLBMC_SYMEX_HPP

#include <map>
#include <string>
#include <vector>

#include "solbmc/goto.hpp"
#include "solbmc/ir.hpp"

namespace solbmc {

struct VersionedSymbol {
  std::string base;
  int version = 0;

  std::string name() const { return base + "#" + std::to_string(version); }
  friend auto operator<=>(const VersionedSymbol&, const VersionedSymbol&) = default;
};

enum class EquationKind { Assignment, Assumption, Property };

struct SsaEquation {
  EquationKind kind = EquationKind::Assignment;
  VersionedSymbol lhs;     // Assignment
  SolType type;            // Assignment: type of lhs
  IrExpr rhs;              // Assignment rhs; Assumption condition (guard-relativised)
  int claim = 0;           // Property
  IrExpr guard;            // path condition under which the instruction executes
  IrExpr predicate;        // Property
  SourceSpan source;
  std::size_t pc = 0;      // originating instruction index
  bool hidden = false;     // phi merges and tool bookkeeping
};

/// Fresh symbol standing for the value of one nondet marker.
struct NondetInput {
  VersionedSymbol symbol;
  SolType type;
  std::size_t pc = 0;
  unsigned ordinal = 0;  // pre-order position of the marker within the instruction
};

struct SsaProgram {
  std::vector<SsaEquation> equations;
  std::vector<NondetInput> nondets;
  std::vector<int> claim_ids;  // every claim of the source program
};

struct SymexOptions {
  bool constant_propagation = true;
};

SsaProgram execute(const GotoProgram& p, const SymexOptions& options = {});

struct Vc {
  int claim = 0;
  /// Assignments and assumptions (indices into the SsaProgram).
  std::vector<std::size_t> constraints;
  /// Conjunction over every instance of the claim; the formula to refute.
  IrExpr property;
  /// Property equations of the claim, in program order.
  std::vector<std::size_t> instances;
};

Vc generate_vc(const SsaProgram& ssa, int claim);

/// Textual dump: `name#version = expr`, `ASSUME expr`, `ASSERT claimN expr`.
std::string show_ssa(const SsaProgram& ssa, bool include_hidden = false);

/// Algebraic simplification used by symbolic execution.
IrExpr simplify(const IrExpr& e);

}  // namespace solbmc

#endif  // SOLBMC_SYMEX_HPP
