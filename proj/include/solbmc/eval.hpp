#ifndef SOLBMC_EVAL_HPP
#define SOLBMC_EVAL_HPP

#include <functional>
#include <map>
#include <string>

#include "solbmc/ir.hpp"

namespace solbmc {

/// Concrete value: a bit pattern for scalars, a sparse element map (default
/// zero) for arrays.
struct Value {
  BigUint bits;
  std::map<BigUint, BigUint> elems;

  friend bool operator==(const Value&, const Value&) = default;
};

using SymbolValues = std::function<Value(const IrExpr& symbol)>;

/// Evaluates `e` with the bit-vector semantics of the SMT encoding
/// (modular arithmetic, SMT-LIB division by zero). Nondet nodes are not
/// evaluable and raise an internal error.
Value evaluate(const IrExpr& e, const SymbolValues& lookup);

/// Scalar semantics of a single operator on already-evaluated operands.
BigUint apply_binary(BinaryOp op, const SolType& operand_type, const BigUint& a, const BigUint& b);
BigUint apply_unary(UnaryOp op, const SolType& type, const BigUint& a);
BigUint apply_cast(const SolType& from, const SolType& to, const BigUint& a);

std::string format_value(const Value& v, const SolType& type);

}  // namespace solbmc

#endif  // SOLBMC_EVAL_HPP
