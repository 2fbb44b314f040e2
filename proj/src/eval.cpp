#include "solbmc/eval.hpp"

#include <sstream>

#include "solbmc/error.hpp"

namespace solbmc {

using boost::multiprecision::cpp_int;

BigUint apply_cast(const SolType& from, const SolType& to, const BigUint& a) {
  if (to.is_bool()) return a != 0 ? 1 : 0;
  if (from.is_signed() && to.width > from.width) return from_signed(to_signed(a, from.width), to.width);
  return truncate(a, to.width);
}

BigUint apply_unary(UnaryOp op, const SolType& type, const BigUint& a) {
  switch (op) {
    case UnaryOp::Not: return a == 0 ? 1 : 0;
    case UnaryOp::Neg: return truncate((BigUint(1) << type.width) - a, type.width);
    case UnaryOp::BitNot: return a ^ mask(type.width);
  }
  return 0;
}

BigUint apply_binary(BinaryOp op, const SolType& t, const BigUint& a, const BigUint& b) {
  const unsigned w = t.width;
  const bool s = t.is_signed();
  auto sa = [&] { return to_signed(a, w); };
  auto sb = [&] { return to_signed(b, w); };
  switch (op) {
    case BinaryOp::Add: return truncate(a + b, w);
    case BinaryOp::Sub: return truncate(a + (BigUint(1) << w) - b, w);
    case BinaryOp::Mul: return truncate(a * b, w);
    case BinaryOp::Div:
      if (!s) return b == 0 ? mask(w) : a / b;
      if (b == 0) return sa() < 0 ? BigUint(1) : mask(w);
      return from_signed(sa() / sb(), w);  // cpp_int truncates toward zero
    case BinaryOp::Mod:
      if (!s) return b == 0 ? a : a % b;
      if (b == 0) return a;
      return from_signed(sa() % sb(), w);  // sign follows the dividend
    case BinaryOp::Shl:
      return b >= w ? BigUint(0) : truncate(a << b.convert_to<unsigned>(), w);
    case BinaryOp::Shr:
      if (!s) return b >= w ? BigUint(0) : BigUint(a >> b.convert_to<unsigned>());
      if (b >= w) return sa() < 0 ? mask(w) : BigUint(0);
      {
        cpp_int v = sa();
        unsigned k = b.convert_to<unsigned>();
        cpp_int q = v >= 0 ? cpp_int(v >> k) : cpp_int(-((-v - 1) >> k) - 1);
        return from_signed(q, w);
      }
    case BinaryOp::BitAnd: return a & b;
    case BinaryOp::BitOr: return a | b;
    case BinaryOp::BitXor: return a ^ b;
    case BinaryOp::And: return (a != 0 && b != 0) ? 1 : 0;
    case BinaryOp::Or: return (a != 0 || b != 0) ? 1 : 0;
    case BinaryOp::Implies: return (a == 0 || b != 0) ? 1 : 0;
    case BinaryOp::Eq: return a == b ? 1 : 0;
    case BinaryOp::Ne: return a != b ? 1 : 0;
    case BinaryOp::Lt: return (s ? sa() < sb() : a < b) ? 1 : 0;
    case BinaryOp::Le: return (s ? sa() <= sb() : a <= b) ? 1 : 0;
    case BinaryOp::Gt: return (s ? sa() > sb() : a > b) ? 1 : 0;
    case BinaryOp::Ge: return (s ? sa() >= sb() : a >= b) ? 1 : 0;
  }
  return 0;
}

Value evaluate(const IrExpr& e, const SymbolValues& lookup) {
  switch (e.kind) {
    case ExprKind::Constant:
      return {e.value, {}};
    case ExprKind::Symbol:
      return lookup(e);
    case ExprKind::Nondet:
      throw Error(ErrorKind::NondetValueMissing, "nondet value not bound during evaluation", e.span);
    case ExprKind::Unary:
      return {apply_unary(e.unary_op, e.type, evaluate(e.operands[0], lookup).bits), {}};
    case ExprKind::Binary: {
      const IrExpr& l = e.operands[0];
      Value a = evaluate(l, lookup);
      Value b = evaluate(e.operands[1], lookup);
      if (l.type.is_array()) {
        bool eq = a.elems == b.elems;
        return {BigUint(e.binary_op == BinaryOp::Eq ? eq : !eq), {}};
      }
      return {apply_binary(e.binary_op, l.type, a.bits, b.bits), {}};
    }
    case ExprKind::Ite:
      return evaluate(e.operands[0], lookup).bits != 0 ? evaluate(e.operands[1], lookup)
                                                       : evaluate(e.operands[2], lookup);
    case ExprKind::Cast: {
      const IrExpr& op = e.operands[0];
      return {apply_cast(op.type, e.type, evaluate(op, lookup).bits), {}};
    }
    case ExprKind::Index: {
      Value a = evaluate(e.operands[0], lookup);
      BigUint i = evaluate(e.operands[1], lookup).bits;
      auto it = a.elems.find(i);
      return {it == a.elems.end() ? BigUint(0) : it->second, {}};
    }
    case ExprKind::Store: {
      Value a = evaluate(e.operands[0], lookup);
      BigUint i = evaluate(e.operands[1], lookup).bits;
      BigUint v = evaluate(e.operands[2], lookup).bits;
      if (v == 0) a.elems.erase(i);
      else a.elems[i] = v;
      return a;
    }
    case ExprKind::Call:
      throw Error(ErrorKind::Encode, "call expression survived lowering", e.span);
  }
  return {};
}

std::string format_value(const Value& v, const SolType& type) {
  if (!type.is_array()) return format_value(v.bits, type);
  std::ostringstream out;
  SolType elem = type.element();
  out << "{";
  if (type.kind == TypeKind::StaticArray && type.size <= 16) {
    for (std::uint64_t i = 0; i < type.size; ++i) {
      auto it = v.elems.find(BigUint(i));
      out << (i ? ", " : "") << format_value(it == v.elems.end() ? BigUint(0) : it->second, elem);
    }
  } else {
    bool first = true;
    for (const auto& [i, x] : v.elems) {
      out << (first ? "" : ", ") << "[" << i << "] = " << format_value(x, elem);
      first = false;
    }
  }
  out << "}";
  return out.str();
}

}  // namespace solbmc
