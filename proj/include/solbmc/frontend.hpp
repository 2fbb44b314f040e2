#ifndef SOLBMC_FRONTEND_HPP
#define SOLBMC_FRONTEND_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "solbmc/ast.hpp"
#include "solbmc/ir.hpp"
#include "solbmc/symbol_table.hpp"

namespace solbmc {

enum class IntrinsicKind { None, Assert, Assume, Nondet };

struct Intrinsic {
  IntrinsicKind kind = IntrinsicKind::None;
  SolType type;  // Nondet: declared return type
  unsigned width() const { return type.width; }
};

/// Result of converting the contract that holds the entry function.
struct ConvertedProgram {
  SymbolTable table;
  std::string contract_name;
  std::string entry_id;
  /// Declarations (with initialisers) of every state variable, in source order.
  std::vector<IrStmt> state_init;
  /// Bodies of the entry function and every function reachable from it.
  std::map<std::string, IrStmt> bodies;
  /// Environment values read by the program (tx.origin, msg.sender, ...).
  std::vector<std::string> environment;
};

/// Walks solc AST nodes in grammar order and produces typed IR, registering
/// every declaration in a symbol table as it goes.
class Frontend {
 public:
  Frontend(const AstRoot& root, const AstNode& contract);

  /// Registers state variables and function symbols of the contract and
  /// converts state variable initialisers.
  void register_contract();

  /// Converts the body of `function`, registering its parameters and locals.
  IrStmt convert_function(const AstNode& function);

  IrExpr get_expr(const AstNode& node, std::optional<SolType> expected = std::nullopt);
  IrStmt get_statement(const AstNode& node);
  IrStmt get_var_decl_stmt(const AstNode& node);
  Intrinsic classify_intrinsic_call(const AstNode& call) const;

  SymbolTable& table() { return table_; }
  const SymbolTable& table() const { return table_; }
  const std::vector<IrStmt>& state_init() const { return state_init_; }
  const std::vector<std::string>& environment() const { return environment_; }
  /// Functions called (directly) by bodies converted so far, in call order.
  const std::vector<const AstNode*>& called_functions() const { return called_; }
  const std::string& function_id(const AstNode& function) const;

 private:
  struct FunctionContext {
    const AstNode* node = nullptr;
    std::string id;
    std::optional<SolType> return_type;
  };

  std::string contract_prefix() const;
  const Symbol& resolve(const AstNode& identifier) const;
  const AstNode* resolve_function(const AstNode& callee) const;
  SolType type_of_type_name(const AstNode& type_name) const;
  SolType declared_type(const AstNode& decl) const;
  std::optional<SolType> return_type(const AstNode& function) const;

  IrExpr coerce(IrExpr e, const SolType& target, const SourceSpan& span) const;
  IrExpr constant_expr(const AstNode& node, std::optional<SolType> expected) const;
  IrExpr get_binary(const AstNode& node, std::optional<SolType> expected);
  IrExpr get_call(const AstNode& node, std::optional<SolType> expected);
  IrExpr get_member(const AstNode& node);
  IrExpr get_lvalue(const AstNode& node);
  IrExpr arithmetic(BinaryOp op, IrExpr lhs, const AstNode& rhs_node, const SourceSpan& span);
  IrStmt get_expression_statement(const AstNode& node);
  IrStmt get_call_statement(const AstNode& call);
  const Symbol& declare_variable(const AstNode& decl, SymbolKind kind, const std::string& scope_id);
  std::string environment_symbol(const std::string& name, const SolType& type);
  void note_called(const AstNode& function);

  const AstRoot& root_;
  const AstNode& contract_;
  SymbolTable table_;
  std::unordered_map<std::int64_t, const AstNode*> functions_;
  std::unordered_map<std::int64_t, std::string> function_ids_;
  std::vector<IrStmt> state_init_;
  std::vector<std::string> environment_;
  std::vector<const AstNode*> called_;
  std::set<std::int64_t> called_ids_;
  std::optional<FunctionContext> current_;
};

/// Converts the contract that declares `entry` together with every function
/// reachable from it.
ConvertedProgram build_symbol_table(const AstRoot& root, std::string_view entry);

}  // namespace solbmc

#endif  // SOLBMC_FRONTEND_HPP
