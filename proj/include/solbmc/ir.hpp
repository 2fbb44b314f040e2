#ifndef SOLBMC_IR_HPP
#define SOLBMC_IR_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "solbmc/source_span.hpp"
#include "solbmc/types.hpp"

namespace solbmc {

enum class ExprKind {
  Constant,  // scalar literal, or the all-zero value of an array type
  Symbol,    // read of a symbol (versioned once in SSA form)
  Nondet,    // unconstrained value of `type`
  Unary,
  Binary,
  Ite,
  Cast,   // width/sign conversion, semantics fixed by operand and result types
  Index,  // array element read: operands {array, index}
  Store,  // array with one element replaced: operands {array, index, value}
  Call,   // direct call of a contract function; removed by lowering
};

enum class UnaryOp { Not, Neg, BitNot };

enum class BinaryOp {
  Add, Sub, Mul, Div, Mod, Shl, Shr,
  BitAnd, BitOr, BitXor,
  And, Or, Implies,
  Eq, Ne, Lt, Le, Gt, Ge,
};

/// Typed expression tree shared by the IR, the GOTO program and SSA form.
struct IrExpr {
  ExprKind kind = ExprKind::Constant;
  SolType type;
  UnaryOp unary_op = UnaryOp::Not;
  BinaryOp binary_op = BinaryOp::Add;
  BigUint value;       // Constant
  std::string symbol;  // Symbol: unique id; Call: function unique id
  int version = -1;    // Symbol in SSA form
  /// Set on expressions synthesised by the tool itself (array push
  /// bookkeeping); instrumentation leaves them alone.
  bool internal = false;
  std::vector<IrExpr> operands;
  SourceSpan span;

  bool is_constant() const { return kind == ExprKind::Constant; }
  bool is_true() const { return kind == ExprKind::Constant && type.is_bool() && value != 0; }
  bool is_false() const { return kind == ExprKind::Constant && type.is_bool() && value == 0; }

  friend bool operator==(const IrExpr& a, const IrExpr& b);
};

IrExpr constant(const SolType& type, const BigUint& value);
IrExpr bool_constant(bool value);
IrExpr zero_value(const SolType& type);
IrExpr symbol_ref(const std::string& id, const SolType& type);
IrExpr nondet(const SolType& type);
IrExpr unary(UnaryOp op, IrExpr operand);
/// Result type is Bool for logical ops and comparisons, otherwise the left
/// operand's type.
IrExpr binary(BinaryOp op, IrExpr lhs, IrExpr rhs);
IrExpr ite(IrExpr cond, IrExpr then_value, IrExpr else_value);
IrExpr cast(IrExpr operand, const SolType& to);
IrExpr index(IrExpr array, IrExpr idx);
IrExpr store(IrExpr array, IrExpr idx, IrExpr value);
IrExpr call(const std::string& function_id, const SolType& result, std::vector<IrExpr> args);

IrExpr logical_not(IrExpr e);
IrExpr conjunction(const std::vector<IrExpr>& terms);
IrExpr disjunction(IrExpr a, IrExpr b);
/// `a => b`, folded when either side is constant.
IrExpr implication(IrExpr a, IrExpr b);

/// Replaces every Nondet node, numbered in pre-order from 0.
IrExpr replace_nondets(const IrExpr& e, const std::function<IrExpr(unsigned ordinal, const IrExpr&)>& fn);

bool is_comparison(BinaryOp op);
bool is_logical(BinaryOp op);
std::string_view op_text(BinaryOp op);
std::string_view op_text(UnaryOp op);

/// Pre-order traversal; returning false from the visitor skips operands.
void visit(const IrExpr& e, const std::function<bool(const IrExpr&)>& visitor);
bool contains(const IrExpr& e, ExprKind kind);

/// Infix rendering. `name_of` maps a symbol node to its printed name.
std::string to_string(const IrExpr& e,
                      const std::function<std::string(const IrExpr&)>& name_of = {});

enum class StmtKind {
  Decl, Assign, ArrayPush, If, For, While, Block, Return, Break, Continue, Expression, Assume, Assert,
};

/// Structured statement IR produced by the frontend.
struct IrStmt {
  StmtKind kind = StmtKind::Block;
  std::string symbol;        // Decl: declared symbol; ArrayPush: array symbol
  std::optional<IrExpr> lhs;  // Assign: Symbol or Index lvalue
  std::optional<IrExpr> expr;  // init / rhs / condition / pushed value / return value
  std::vector<IrStmt> body;    // Block statements; If: {then[, else]}; loops: {body}
  std::optional<std::vector<IrStmt>> init;  // For
  std::optional<IrExpr> cond;               // For / While (absent: true)
  std::optional<std::vector<IrStmt>> step;  // For increment
  SourceSpan span;
};

}  // namespace solbmc

#endif  // SOLBMC_IR_HPP
