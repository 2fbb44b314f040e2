#ifndef SOLBMC_GOTO_HPP
#define SOLBMC_GOTO_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "solbmc/ast.hpp"
#include "solbmc/frontend.hpp"
#include "solbmc/ir.hpp"
#include "solbmc/symbol_table.hpp"

namespace solbmc {

enum class InstrKind { Decl, Assign, Assume, Assert, Goto, Skip, End };

enum class ClaimCategory {
  UserAssert, Overflow, Underflow, BoundsStatic, BoundsDynamic, DivByZero, TxOrigin, UnwindBound,
};

/// "user-assert", "overflow", "bounds-static", ...
std::string_view to_string(ClaimCategory category);
std::optional<ClaimCategory> parse_claim_category(std::string_view text);

struct Claim {
  int id = 0;
  ClaimCategory category = ClaimCategory::UserAssert;
  std::string description;
  SourceSpan location;
};

struct GotoInstruction {
  InstrKind kind = InstrKind::Skip;
  std::string symbol;          // Decl / Assign target
  std::optional<IrExpr> expr;  // Assign rhs; Assume/Assert condition; Goto guard
  std::size_t target = 0;      // Goto
  int claim = 0;               // Assert
  SourceSpan location;
  std::uint64_t uid = 0;  // stable identity across instrumentation passes
  bool internal = false;  // bookkeeping the trace does not show
};

/// Loop recorded by lowering, referenced by instruction uid.
struct GotoLoop {
  std::uint64_t head = 0;       // first instruction of the condition
  std::uint64_t exit_jump = 0;  // conditional GOTO leaving the loop
  std::uint64_t back_edge = 0;  // unconditional GOTO back to head
  SourceSpan location;
};

struct GotoProgram {
  std::vector<GotoInstruction> instructions;
  std::vector<Claim> claims;
  std::size_t entry_index = 0;
  SymbolTable symbols;
  std::vector<GotoLoop> loops;
  /// Instrumentation sites already covered, "<category>@<uid>:<path>".
  std::set<std::string> instrumented_sites;
  std::uint64_t next_uid = 1;

  const Claim* find_claim(int id) const;
  int add_claim(ClaimCategory category, std::string description, const SourceSpan& location);
};

inline constexpr unsigned kDefaultUnwind = 10;
inline constexpr unsigned kInlineDepthLimit = 16;

/// Linearises the entry function: state variables, environment values and
/// parameters first, then the body with reachable calls inlined.
GotoProgram lower(const ConvertedProgram& converted);

GotoProgram instrument_overflow(GotoProgram p, bool div_by_zero = true);
GotoProgram instrument_div_by_zero(GotoProgram p);
GotoProgram instrument_bounds(GotoProgram p);

/// Syntactic tx.origin authorization findings over the whole source unit.
std::vector<Claim> detect_tx_origin(const AstRoot& root);

GotoProgram unwind(GotoProgram p, unsigned bound, bool unwinding_assertions);

/// True when every GOTO jumps strictly forward.
bool is_acyclic(const GotoProgram& p);

std::string to_string(const GotoProgram& p);

}  // namespace solbmc

#endif  // SOLBMC_GOTO_HPP
