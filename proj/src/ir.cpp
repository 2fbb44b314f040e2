#include "solbmc/ir.hpp"

#include <sstream>

namespace solbmc {

bool operator==(const IrExpr& a, const IrExpr& b) {
  return a.kind == b.kind && a.type == b.type && a.unary_op == b.unary_op &&
         a.binary_op == b.binary_op && a.value == b.value && a.symbol == b.symbol &&
         a.version == b.version && a.operands == b.operands;
}

IrExpr constant(const SolType& type, const BigUint& value) {
  IrExpr e;
  e.kind = ExprKind::Constant;
  e.type = type;
  e.value = type.is_array() ? BigUint(0) : truncate(value, type.width);
  return e;
}

IrExpr bool_constant(bool value) { return constant(SolType::boolean(), value ? 1 : 0); }

IrExpr zero_value(const SolType& type) { return constant(type, 0); }

IrExpr symbol_ref(const std::string& id, const SolType& type) {
  IrExpr e;
  e.kind = ExprKind::Symbol;
  e.type = type;
  e.symbol = id;
  return e;
}

IrExpr nondet(const SolType& type) {
  IrExpr e;
  e.kind = ExprKind::Nondet;
  e.type = type;
  return e;
}

IrExpr unary(UnaryOp op, IrExpr operand) {
  IrExpr e;
  e.kind = ExprKind::Unary;
  e.unary_op = op;
  e.type = op == UnaryOp::Not ? SolType::boolean() : operand.type;
  e.span = operand.span;
  e.operands.push_back(std::move(operand));
  return e;
}

bool is_comparison(BinaryOp op) {
  switch (op) {
    case BinaryOp::Eq: case BinaryOp::Ne: case BinaryOp::Lt:
    case BinaryOp::Le: case BinaryOp::Gt: case BinaryOp::Ge:
      return true;
    default:
      return false;
  }
}

bool is_logical(BinaryOp op) {
  return op == BinaryOp::And || op == BinaryOp::Or || op == BinaryOp::Implies;
}

IrExpr binary(BinaryOp op, IrExpr lhs, IrExpr rhs) {
  IrExpr e;
  e.kind = ExprKind::Binary;
  e.binary_op = op;
  e.type = (is_comparison(op) || is_logical(op)) ? SolType::boolean() : lhs.type;
  e.span = lhs.span;
  e.operands.push_back(std::move(lhs));
  e.operands.push_back(std::move(rhs));
  return e;
}

IrExpr ite(IrExpr cond, IrExpr then_value, IrExpr else_value) {
  IrExpr e;
  e.kind = ExprKind::Ite;
  e.type = then_value.type;
  e.span = cond.span;
  e.operands.push_back(std::move(cond));
  e.operands.push_back(std::move(then_value));
  e.operands.push_back(std::move(else_value));
  return e;
}

IrExpr cast(IrExpr operand, const SolType& to) {
  IrExpr e;
  e.kind = ExprKind::Cast;
  e.type = to;
  e.span = operand.span;
  e.operands.push_back(std::move(operand));
  return e;
}

IrExpr index(IrExpr array, IrExpr idx) {
  IrExpr e;
  e.kind = ExprKind::Index;
  e.type = array.type.element();
  e.span = array.span;
  e.operands.push_back(std::move(array));
  e.operands.push_back(std::move(idx));
  return e;
}

IrExpr store(IrExpr array, IrExpr idx, IrExpr value) {
  IrExpr e;
  e.kind = ExprKind::Store;
  e.type = array.type;
  e.span = array.span;
  e.operands.push_back(std::move(array));
  e.operands.push_back(std::move(idx));
  e.operands.push_back(std::move(value));
  return e;
}

IrExpr call(const std::string& function_id, const SolType& result, std::vector<IrExpr> args) {
  IrExpr e;
  e.kind = ExprKind::Call;
  e.type = result;
  e.symbol = function_id;
  e.operands = std::move(args);
  return e;
}

IrExpr logical_not(IrExpr e) {
  if (e.is_true()) return bool_constant(false);
  if (e.is_false()) return bool_constant(true);
  if (e.kind == ExprKind::Unary && e.unary_op == UnaryOp::Not) return std::move(e.operands[0]);
  return unary(UnaryOp::Not, std::move(e));
}

IrExpr conjunction(const std::vector<IrExpr>& terms) {
  std::optional<IrExpr> acc;
  for (const auto& t : terms) {
    if (t.is_true()) continue;
    if (t.is_false()) return bool_constant(false);
    acc = acc ? binary(BinaryOp::And, std::move(*acc), t) : t;
  }
  return acc ? *acc : bool_constant(true);
}

IrExpr disjunction(IrExpr a, IrExpr b) {
  if (a.is_true() || b.is_false()) return a;
  if (b.is_true() || a.is_false()) return b;
  return binary(BinaryOp::Or, std::move(a), std::move(b));
}

IrExpr implication(IrExpr a, IrExpr b) {
  if (a.is_true() || b.is_false()) return a.is_true() ? b : logical_not(std::move(a));
  if (a.is_false() || b.is_true()) return bool_constant(true);
  return binary(BinaryOp::Implies, std::move(a), std::move(b));
}

namespace {

IrExpr replace_nondets(const IrExpr& e, unsigned& next,
                       const std::function<IrExpr(unsigned, const IrExpr&)>& fn) {
  if (e.kind == ExprKind::Nondet) return fn(next++, e);
  IrExpr out = e;
  for (auto& op : out.operands) op = replace_nondets(op, next, fn);
  return out;
}

}  // namespace

IrExpr replace_nondets(const IrExpr& e, const std::function<IrExpr(unsigned, const IrExpr&)>& fn) {
  unsigned next = 0;
  return replace_nondets(e, next, fn);
}

std::string_view op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Shl: return "<<";
    case BinaryOp::Shr: return ">>";
    case BinaryOp::BitAnd: return "&";
    case BinaryOp::BitOr: return "|";
    case BinaryOp::BitXor: return "^";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
    case BinaryOp::Implies: return "=>";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
  }
  return "?";
}

std::string_view op_text(UnaryOp op) {
  switch (op) {
    case UnaryOp::Not: return "!";
    case UnaryOp::Neg: return "-";
    case UnaryOp::BitNot: return "~";
  }
  return "?";
}

void visit(const IrExpr& e, const std::function<bool(const IrExpr&)>& visitor) {
  if (!visitor(e)) return;
  for (const auto& op : e.operands) visit(op, visitor);
}

bool contains(const IrExpr& e, ExprKind kind) {
  bool found = false;
  visit(e, [&](const IrExpr& n) {
    if (n.kind == kind) found = true;
    return !found;
  });
  return found;
}

namespace {

void print(std::ostream& out, const IrExpr& e,
           const std::function<std::string(const IrExpr&)>& name_of, bool nested) {
  auto sub = [&](const IrExpr& op) { print(out, op, name_of, true); };
  switch (e.kind) {
    case ExprKind::Constant:
      if (e.type.is_array()) {
        out << "zero(" << to_string(e.type) << ")";
      } else {
        out << format_value(e.value, e.type);
      }
      return;
    case ExprKind::Symbol:
      if (name_of) {
        out << name_of(e);
      } else {
        out << e.symbol;
        if (e.version >= 0) out << "#" << e.version;
      }
      return;
    case ExprKind::Nondet:
      out << "nondet()";
      return;
    case ExprKind::Unary:
      out << op_text(e.unary_op);
      sub(e.operands[0]);
      return;
    case ExprKind::Binary:
      if (nested) out << "(";
      sub(e.operands[0]);
      out << " " << op_text(e.binary_op) << " ";
      sub(e.operands[1]);
      if (nested) out << ")";
      return;
    case ExprKind::Ite:
      if (nested) out << "(";
      sub(e.operands[0]);
      out << " ? ";
      sub(e.operands[1]);
      out << " : ";
      sub(e.operands[2]);
      if (nested) out << ")";
      return;
    case ExprKind::Cast:
      out << to_string(e.type) << "(";
      print(out, e.operands[0], name_of, false);
      out << ")";
      return;
    case ExprKind::Index:
      sub(e.operands[0]);
      out << "[";
      print(out, e.operands[1], name_of, false);
      out << "]";
      return;
    case ExprKind::Store:
      if (nested) out << "(";
      sub(e.operands[0]);
      out << " with [";
      print(out, e.operands[1], name_of, false);
      out << "] = ";
      sub(e.operands[2]);
      if (nested) out << ")";
      return;
    case ExprKind::Call:
      out << e.symbol << "(";
      for (std::size_t i = 0; i < e.operands.size(); ++i) {
        if (i) out << ", ";
        print(out, e.operands[i], name_of, false);
      }
      out << ")";
      return;
  }
}

}  // namespace

std::string to_string(const IrExpr& e, const std::function<std::string(const IrExpr&)>& name_of) {
  std::ostringstream out;
  print(out, e, name_of, false);
  return out.str();
}

}  // namespace solbmc
