#include "solbmc/frontend.hpp"

#include <algorithm>

#include "solbmc/error.hpp"

namespace solbmc {

using boost::multiprecision::cpp_int;

namespace {

[[noreturn]] void unsupported(const AstNode& node, const std::string& what = {}) {
  throw Error(ErrorKind::UnsupportedConstruct,
              "unsupported construct '" + node.node_type + "'" + (what.empty() ? "" : ": " + what),
              node.span);
}

[[noreturn]] void type_error(const SourceSpan& span, const std::string& message) {
  throw Error(ErrorKind::Type, message, span);
}

std::string type_string(const AstNode& node) {
  auto it = node.attributes.find("typeDescriptions");
  if (it == node.attributes.end() || !it->is_object() || !it->contains("typeString") ||
      !(*it)["typeString"].is_string())
    return {};
  return (*it)["typeString"].get<std::string>();
}

std::optional<cpp_int> parse_integer(std::string text) {
  text.erase(std::remove(text.begin(), text.end(), '_'), text.end());
  if (text.empty()) return std::nullopt;
  try {
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
      if (text.find_first_not_of("0123456789abcdefABCDEF", 2) != std::string::npos)
        return std::nullopt;
      return cpp_int(text);
    }
    std::string mantissa = text, exponent;
    if (auto e = text.find_first_of("eE"); e != std::string::npos) {
      mantissa = text.substr(0, e);
      exponent = text.substr(e + 1);
    }
    std::string digits = mantissa;
    long frac = 0;
    if (auto dot = mantissa.find('.'); dot != std::string::npos) {
      frac = static_cast<long>(mantissa.size() - dot - 1);
      digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      return std::nullopt;
    long exp = exponent.empty() ? 0 : std::stol(exponent);
    if (exp < frac) return std::nullopt;  // fractional constant
    cpp_int value(digits);
    for (long i = 0; i < exp - frac; ++i) value *= 10;
    return value;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

cpp_int subdenomination(const std::string& unit) {
  if (unit.empty() || unit == "wei" || unit == "seconds") return 1;
  if (unit == "gwei") return cpp_int(1000000000);
  if (unit == "ether") return cpp_int("1000000000000000000");
  if (unit == "minutes") return 60;
  if (unit == "hours") return 3600;
  if (unit == "days") return 86400;
  if (unit == "weeks") return 604800;
  return 0;
}

/// Value of a compile-time integer constant expression (solc's int_const).
std::optional<cpp_int> literal_value(const AstNode& node) {
  std::string ts = type_string(node);
  if (ts.rfind("int_const ", 0) == 0) {
    std::string text = ts.substr(10);
    bool negative = !text.empty() && text[0] == '-';
    if (negative) text = text.substr(1);
    if (!text.empty() && text.find_first_not_of("0123456789") == std::string::npos) {
      cpp_int v(text);
      return negative ? cpp_int(-v) : v;
    }
  }
  switch (node.kind) {
    case NodeKind::Literal: {
      if (node.attr_string("kind") != "number") return std::nullopt;
      auto v = parse_integer(node.attr_string("value"));
      if (!v) return std::nullopt;
      cpp_int unit = subdenomination(node.attr_string("subdenomination"));
      if (unit == 0) return std::nullopt;
      return *v * unit;
    }
    case NodeKind::UnaryOperation:
      if (node.attr_string("operator") == "-")
        if (const AstNode* sub = node.child("subExpression"))
          if (auto v = literal_value(*sub)) return cpp_int(-*v);
      return std::nullopt;
    case NodeKind::TupleExpression: {
      auto comps = node.children("components");
      if (comps.size() == 1 && comps[0] && !node.attr_bool("isInlineArray"))
        return literal_value(*comps[0]);
      return std::nullopt;
    }
    case NodeKind::BinaryOperation: {
      const AstNode* l = node.child("leftExpression");
      const AstNode* r = node.child("rightExpression");
      if (!l || !r) return std::nullopt;
      auto a = literal_value(*l), b = literal_value(*r);
      if (!a || !b) return std::nullopt;
      std::string op = node.attr_string("operator");
      if (op == "+") return *a + *b;
      if (op == "-") return *a - *b;
      if (op == "*") return *a * *b;
      if (op == "/" && *b != 0) return *a / *b;
      if (op == "%" && *b != 0) return *a % *b;
      if (op == "**" && *b >= 0 && *b <= 1024) return boost::multiprecision::pow(*a, b->convert_to<unsigned>());
      if (op == "<<" && *b >= 0 && *b <= 1024) return *a << b->convert_to<unsigned>();
      if (op == ">>" && *b >= 0 && *b <= 1024) return *a >> b->convert_to<unsigned>();
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

bool fits(const cpp_int& v, const SolType& t) {
  if (t.kind == TypeKind::UnsignedBv || t.kind == TypeKind::Address)
    return v >= 0 && v < (cpp_int(1) << t.width);
  if (t.kind == TypeKind::SignedBv) {
    cpp_int half = cpp_int(1) << (t.width - 1);
    return v >= -half && v < half;
  }
  return false;
}

SolType mobile_type(const cpp_int& v, const SourceSpan& span) {
  for (unsigned w = 8; w <= 256; w += 8) {
    SolType t = v >= 0 ? SolType::unsigned_bv(w) : SolType::signed_bv(w);
    if (fits(v, t)) return t;
  }
  type_error(span, "integer constant does not fit in 256 bits");
}

bool implicitly_convertible(const SolType& from, const SolType& to) {
  if (from == to) return true;
  if (from.kind == TypeKind::UnsignedBv && to.kind == TypeKind::UnsignedBv) return from.width <= to.width;
  if (from.kind == TypeKind::SignedBv && to.kind == TypeKind::SignedBv) return from.width <= to.width;
  if (from.kind == TypeKind::UnsignedBv && to.kind == TypeKind::SignedBv) return from.width < to.width;
  return false;
}

std::optional<BinaryOp> binary_op(const std::string& op) {
  static const std::map<std::string, BinaryOp> ops = {
      {"+", BinaryOp::Add},     {"-", BinaryOp::Sub},     {"*", BinaryOp::Mul},
      {"/", BinaryOp::Div},     {"%", BinaryOp::Mod},     {"<<", BinaryOp::Shl},
      {">>", BinaryOp::Shr},    {"&", BinaryOp::BitAnd},  {"|", BinaryOp::BitOr},
      {"^", BinaryOp::BitXor},  {"&&", BinaryOp::And},    {"||", BinaryOp::Or},
      {"==", BinaryOp::Eq},     {"!=", BinaryOp::Ne},     {"<", BinaryOp::Lt},
      {"<=", BinaryOp::Le},     {">", BinaryOp::Gt},      {">=", BinaryOp::Ge},
  };
  auto it = ops.find(op);
  if (it == ops.end()) return std::nullopt;
  return it->second;
}

bool is_assume_name(const std::string& name) { return name == "__ESBMC_assume" || name == "assume"; }

bool is_nondet_name(const std::string& name) { return name.rfind("nondet", 0) == 0; }

// Checked shape of shift operands: the amount is unsigned and both sides are
// brought to a common width before the shift, then the result is narrowed
// back to the left operand's type.
IrExpr make_shift(BinaryOp op, IrExpr lhs, IrExpr rhs, const SourceSpan& span) {
  if (!lhs.type.is_integer()) type_error(span, "shift of non-integer value");
  if (rhs.type.kind != TypeKind::UnsignedBv) type_error(span, "shift amount must be unsigned");
  SolType result = lhs.type;
  unsigned width = std::max(lhs.type.width, rhs.type.width);
  if (lhs.type.width < width)
    lhs = cast(std::move(lhs), lhs.type.is_signed() ? SolType::signed_bv(width) : SolType::unsigned_bv(width));
  if (rhs.type.width < width) rhs = cast(std::move(rhs), SolType::unsigned_bv(width));
  IrExpr shifted = binary(op, std::move(lhs), std::move(rhs));
  shifted.span = span;
  if (shifted.type.width != result.width) shifted = cast(std::move(shifted), result);
  shifted.span = span;
  return shifted;
}

void check_operands(BinaryOp op, const SolType& t, const SourceSpan& span) {
  switch (op) {
    case BinaryOp::Add: case BinaryOp::Sub: case BinaryOp::Mul: case BinaryOp::Div:
    case BinaryOp::Mod: case BinaryOp::BitAnd: case BinaryOp::BitOr: case BinaryOp::BitXor:
      if (!t.is_integer()) type_error(span, "arithmetic on non-integer type " + to_string(t));
      return;
    case BinaryOp::Lt: case BinaryOp::Le: case BinaryOp::Gt: case BinaryOp::Ge:
      if (!t.is_bitvector()) type_error(span, "ordering comparison on type " + to_string(t));
      return;
    case BinaryOp::Eq: case BinaryOp::Ne:
      if (t.is_array()) type_error(span, "equality on array type " + to_string(t));
      return;
    case BinaryOp::And: case BinaryOp::Or: case BinaryOp::Implies:
      if (!t.is_bool()) type_error(span, "logical operator on non-bool type " + to_string(t));
      return;
    default:
      return;
  }
}

}  // namespace

Frontend::Frontend(const AstRoot& root, const AstNode& contract) : root_(root), contract_(contract) {
  for (const AstNode* member : contract_.children("nodes"))
    if (member->kind == NodeKind::FunctionDefinition) functions_[member->id] = member;
}

std::string Frontend::contract_prefix() const { return "c:" + contract_.name() + "@"; }

const std::string& Frontend::function_id(const AstNode& function) const {
  auto it = function_ids_.find(function.id);
  if (it == function_ids_.end())
    throw Error(ErrorKind::NotFound, "function '" + function.name() + "' is not registered",
                function.span);
  return it->second;
}

SolType Frontend::type_of_type_name(const AstNode& type_name) const {
  if (type_name.kind == NodeKind::ElementaryTypeName) {
    SolType t;
    if (!parse_elementary_type(type_name.name(), t)) unsupported(type_name, "type " + type_name.name());
    return t;
  }
  if (type_name.kind == NodeKind::ArrayTypeName) {
    const AstNode* base = type_name.child("baseType");
    if (!base) unsupported(type_name, "array without base type");
    SolType elem = type_of_type_name(*base);
    if (elem.is_array()) unsupported(type_name, "nested arrays");
    const AstNode* length = type_name.child("length");
    if (!length) return SolType::dyn_array(elem);
    auto n = literal_value(*length);
    if (!n || *n <= 0 || *n > cpp_int(1) << 32) unsupported(type_name, "array length must be a positive constant");
    return SolType::static_array(elem, n->convert_to<std::uint64_t>());
  }
  unsupported(type_name, "type " + type_name.node_type);
}

SolType Frontend::declared_type(const AstNode& decl) const {
  const AstNode* tn = decl.child("typeName");
  if (!tn) unsupported(decl, "declaration without explicit type");
  return type_of_type_name(*tn);
}

std::optional<SolType> Frontend::return_type(const AstNode& function) const {
  const AstNode* returns = function.child("returnParameters");
  if (!returns) return std::nullopt;
  auto params = returns->children("parameters");
  if (params.empty()) return std::nullopt;
  if (params.size() > 1) unsupported(function, "multiple return values");
  return declared_type(*params[0]);
}

void Frontend::register_contract() {
  if (contract_.attr_string("contractKind") != "contract" &&
      contract_.attr_string("contractKind") != "library")
    unsupported(contract_, contract_.attr_string("contractKind"));
  if (!contract_.children("baseContracts").empty()) unsupported(contract_, "inheritance");

  for (const AstNode* member : contract_.children("nodes")) {
    if (member->kind == NodeKind::VariableDeclaration) {
      IrStmt decl = get_var_decl_stmt(*member);
      state_init_.push_back(std::move(decl));
    }
  }
  for (const AstNode* member : contract_.children("nodes")) {
    if (member->kind != NodeKind::FunctionDefinition) continue;
    std::string kind = member->attr_string("kind");
    std::string name = kind == "function" ? member->name() : kind;
    Symbol s;
    s.unique_id = table_.fresh_id(contract_prefix() + name);
    s.display_name = name;
    s.kind = SymbolKind::Function;
    s.location = member->span;
    s.ast_id = member->id;
    auto params = member->child("parameters") ? member->child("parameters")->children("parameters")
                                              : std::vector<const AstNode*>{};
    std::optional<SolType> ret;
    try {
      ret = return_type(*member);
    } catch (const Error&) {
      // Reported if the function is ever converted or called.
    }
    if (ret) s.sol_type = *ret;
    if (is_assume_name(name) && params.size() == 1) s.kind = SymbolKind::Intrinsic;
    if (is_nondet_name(name) && params.empty() && ret && !ret->is_array()) s.kind = SymbolKind::Intrinsic;
    function_ids_[member->id] = s.unique_id;
    table_.add(std::move(s), false);
  }
}

const Symbol& Frontend::declare_variable(const AstNode& decl, SymbolKind kind,
                                         const std::string& scope_id) {
  SolType type = declared_type(decl);
  std::string loc = decl.attr_string("storageLocation");
  if (kind == SymbolKind::LocalVar && loc == "storage") unsupported(decl, "local storage reference");
  if (decl.attr_bool("stateVariable") && kind != SymbolKind::StateVar)
    unsupported(decl, "state variable outside contract scope");

  std::string name = decl.name();
  Symbol s;
  s.display_name = name;
  s.unique_id = table_.fresh_id(scope_id + (name.empty() ? "$anon" : name));
  s.sol_type = type;
  s.kind = kind;
  s.location = decl.span;
  s.is_state = kind == SymbolKind::StateVar;
  s.ast_id = decl.id;
  const Symbol& added = table_.add(std::move(s), !name.empty());
  if (type.kind == TypeKind::DynArray) {
    Symbol len;
    len.unique_id = added.unique_id + ".length";
    len.display_name = name + ".length";
    len.sol_type = SolType::index();
    len.kind = SymbolKind::Internal;
    len.location = decl.span;
    len.is_state = kind == SymbolKind::StateVar;
    std::string id = added.unique_id;
    table_.add(std::move(len), false);
    return table_.at(id);
  }
  return added;
}

std::string Frontend::environment_symbol(const std::string& name, const SolType& type) {
  std::string id = "env:" + name;
  if (!table_.contains(id)) {
    Symbol s;
    s.unique_id = id;
    s.display_name = name;
    s.sol_type = type;
    s.kind = SymbolKind::Internal;
    table_.add(std::move(s), false);
    environment_.push_back(id);
  }
  return id;
}

void Frontend::note_called(const AstNode& function) {
  if (called_ids_.insert(function.id).second) called_.push_back(&function);
}

const Symbol& Frontend::resolve(const AstNode& identifier) const {
  if (auto ref = identifier.attr_int("referencedDeclaration"))
    if (const Symbol* s = table_.find_by_ast_id(*ref)) return *s;
  if (const Symbol* s = table_.lookup(identifier.name())) return *s;
  if (const Symbol* s = table_.find(contract_prefix() + identifier.name())) return *s;
  throw Error(ErrorKind::NotFound, "unresolved identifier '" + identifier.name() + "'", identifier.span);
}

const AstNode* Frontend::resolve_function(const AstNode& callee) const {
  if (callee.kind != NodeKind::Identifier) return nullptr;
  if (auto ref = callee.attr_int("referencedDeclaration")) {
    auto it = functions_.find(*ref);
    if (it != functions_.end()) return it->second;
  }
  const AstNode* found = nullptr;
  for (const auto& [id, fn] : functions_) {
    if (fn->name() != callee.name()) continue;
    if (found) throw Error(ErrorKind::Ambiguous, "ambiguous call to '" + callee.name() + "'", callee.span);
    found = fn;
  }
  return found;
}

Intrinsic Frontend::classify_intrinsic_call(const AstNode& call) const {
  const AstNode* callee = call.child("expression");
  if (!callee || callee->kind != NodeKind::Identifier) return {};
  std::string name = callee->name();
  auto args = call.children("arguments");
  auto check_unary_bool = [&](const char* what) {
    if (args.size() != 1)
      throw Error(ErrorKind::Arity,
                  std::string(what) + " expects exactly one argument, got " + std::to_string(args.size()),
                  call.span);
    std::string ts = type_string(*args[0]);
    if (!ts.empty() && ts != "bool")
      throw Error(ErrorKind::Arity, std::string(what) + " expects a bool argument, got " + ts, call.span);
  };
  const AstNode* decl = resolve_function(*callee);
  if (name == "assert" && !decl) {
    check_unary_bool("assert");
    return {IntrinsicKind::Assert, SolType::boolean()};
  }
  if (is_assume_name(name)) {
    check_unary_bool(name.c_str());
    return {IntrinsicKind::Assume, SolType::boolean()};
  }
  if (is_nondet_name(name) && decl) {
    const AstNode* params = decl->child("parameters");
    if (params && !params->children("parameters").empty()) return {};
    std::optional<SolType> ret;
    try {
      ret = return_type(*decl);
    } catch (const Error&) {
      return {};
    }
    if (!ret || ret->is_array()) return {};
    return {IntrinsicKind::Nondet, *ret};
  }
  return {};
}

IrExpr Frontend::coerce(IrExpr e, const SolType& target, const SourceSpan& span) const {
  if (e.type == target) return e;
  if (!implicitly_convertible(e.type, target))
    type_error(span, "cannot convert " + to_string(e.type) + " to " + to_string(target) +
                         " implicitly");
  IrExpr c = cast(std::move(e), target);
  c.span = span;
  return c;
}

IrExpr Frontend::constant_expr(const AstNode& node, std::optional<SolType> expected) const {
  auto v = literal_value(node);
  if (!v) unsupported(node, "non-integer constant");
  SolType t = expected ? *expected : mobile_type(*v, node.span);
  if (!fits(*v, t))
    type_error(node.span, "constant " + v->str() + " does not fit in " + to_string(t));
  IrExpr e = constant(t, from_signed(*v, t.width));
  e.span = node.span;
  return e;
}

IrExpr Frontend::get_expr(const AstNode& node, std::optional<SolType> expected) {
  if (node.kind == NodeKind::Literal && node.attr_string("kind") == "bool") {
    IrExpr e = bool_constant(node.attr_string("value") == "true");
    e.span = node.span;
    return expected ? coerce(std::move(e), *expected, node.span) : e;
  }
  if (literal_value(node)) {
    if (expected && !expected->is_bitvector())
      type_error(node.span, "integer constant used as " + to_string(*expected));
    return constant_expr(node, expected);
  }

  IrExpr result;
  switch (node.kind) {
    case NodeKind::Literal:
      unsupported(node, "literal of kind " + node.attr_string("kind"));
    case NodeKind::Identifier: {
      const Symbol& s = resolve(node);
      if (s.kind == SymbolKind::Function || s.kind == SymbolKind::Intrinsic)
        type_error(node.span, "function '" + s.display_name + "' used as a value");
      result = symbol_ref(s.unique_id, s.sol_type);
      break;
    }
    case NodeKind::MemberAccess:
      result = get_member(node);
      break;
    case NodeKind::IndexAccess: {
      const AstNode* base = node.child("baseExpression");
      const AstNode* idx = node.child("indexExpression");
      if (!base || !idx) unsupported(node, "index access without index");
      IrExpr array = get_expr(*base);
      if (!array.type.is_array()) type_error(node.span, "index access on non-array " + to_string(array.type));
      IrExpr i = literal_value(*idx) ? constant_expr(*idx, SolType::index()) : get_expr(*idx);
      if (i.type.kind != TypeKind::UnsignedBv) type_error(idx->span, "array index must be unsigned");
      if (i.type.width < kIndexWidth) i = cast(std::move(i), SolType::index());
      result = index(std::move(array), std::move(i));
      break;
    }
    case NodeKind::UnaryOperation: {
      std::string op = node.attr_string("operator");
      const AstNode* sub = node.child("subExpression");
      if (!sub) unsupported(node);
      if (op == "!") {
        result = unary(UnaryOp::Not, get_expr(*sub, SolType::boolean()));
      } else if (op == "-") {
        IrExpr operand = get_expr(*sub);
        if (!operand.type.is_signed()) type_error(node.span, "unary minus on " + to_string(operand.type));
        result = unary(UnaryOp::Neg, std::move(operand));
      } else if (op == "~") {
        IrExpr operand = get_expr(*sub);
        if (!operand.type.is_integer()) type_error(node.span, "bitwise not on " + to_string(operand.type));
        result = unary(UnaryOp::BitNot, std::move(operand));
      } else {
        unsupported(node, "operator " + op + " inside an expression");
      }
      break;
    }
    case NodeKind::BinaryOperation:
      result = get_binary(node, expected);
      break;
    case NodeKind::Conditional: {
      const AstNode* c = node.child("condition");
      const AstNode* t = node.child("trueExpression");
      const AstNode* f = node.child("falseExpression");
      if (!c || !t || !f) unsupported(node);
      IrExpr cond = get_expr(*c, SolType::boolean());
      IrExpr a = literal_value(*t) ? IrExpr{} : get_expr(*t, expected);
      IrExpr b = literal_value(*f) ? IrExpr{} : get_expr(*f, expected);
      if (literal_value(*t)) a = constant_expr(*t, literal_value(*f) ? expected : std::optional(b.type));
      if (literal_value(*f)) b = constant_expr(*f, std::optional(a.type));
      if (a.type != b.type) {
        if (implicitly_convertible(a.type, b.type)) a = coerce(std::move(a), b.type, t->span);
        else b = coerce(std::move(b), a.type, f->span);
      }
      result = ite(std::move(cond), std::move(a), std::move(b));
      break;
    }
    case NodeKind::TupleExpression: {
      auto comps = node.children("components");
      if (comps.size() != 1 || !comps[0] || node.attr_bool("isInlineArray"))
        unsupported(node, "tuples and inline arrays");
      return get_expr(*comps[0], expected);
    }
    case NodeKind::FunctionCall:
      result = get_call(node, expected);
      break;
    case NodeKind::Assignment:
      unsupported(node, "assignment used as a value");
    default:
      unsupported(node);
  }
  result.span = node.span;
  if (expected) result = coerce(std::move(result), *expected, node.span);
  return result;
}

IrExpr Frontend::get_binary(const AstNode& node, std::optional<SolType> expected) {
  std::string op_name = node.attr_string("operator");
  auto op = binary_op(op_name);
  if (!op) unsupported(node, "operator " + op_name);
  const AstNode* left = node.child("leftExpression");
  const AstNode* right = node.child("rightExpression");
  if (!left || !right) unsupported(node);

  if (*op == BinaryOp::And || *op == BinaryOp::Or) {
    IrExpr l = get_expr(*left, SolType::boolean());
    IrExpr r = get_expr(*right, SolType::boolean());
    return binary(*op, std::move(l), std::move(r));
  }
  if (*op == BinaryOp::Shl || *op == BinaryOp::Shr) {
    IrExpr l = literal_value(*left) ? constant_expr(*left, expected) : get_expr(*left);
    IrExpr r = literal_value(*right) ? constant_expr(*right, std::nullopt) : get_expr(*right);
    return make_shift(*op, std::move(l), std::move(r), node.span);
  }

  bool lconst = literal_value(*left).has_value();
  bool rconst = literal_value(*right).has_value();
  IrExpr l, r;
  if (lconst && rconst) {
    // Both sides constant: only comparisons get here (arithmetic folds to
    // int_const), so compare at the type that fits both.
    auto a = *literal_value(*left), b = *literal_value(*right);
    bool value = false;
    switch (*op) {
      case BinaryOp::Eq: value = a == b; break;
      case BinaryOp::Ne: value = a != b; break;
      case BinaryOp::Lt: value = a < b; break;
      case BinaryOp::Le: value = a <= b; break;
      case BinaryOp::Gt: value = a > b; break;
      case BinaryOp::Ge: value = a >= b; break;
      default: unsupported(node, "constant arithmetic outside integer range");
    }
    IrExpr e = bool_constant(value);
    e.span = node.span;
    return e;
  }
  if (lconst) {
    r = get_expr(*right);
    l = constant_expr(*left, r.type);
  } else if (rconst) {
    l = get_expr(*left);
    r = constant_expr(*right, l.type);
  } else {
    l = get_expr(*left);
    r = get_expr(*right);
    if (l.type != r.type) {
      if (implicitly_convertible(l.type, r.type)) {
        l = coerce(std::move(l), r.type, left->span);
      } else if (implicitly_convertible(r.type, l.type)) {
        r = coerce(std::move(r), l.type, right->span);
      } else {
        type_error(node.span, "operator " + op_name + " on " + to_string(l.type) + " and " +
                                  to_string(r.type));
      }
    }
  }
  check_operands(*op, l.type, node.span);
  return binary(*op, std::move(l), std::move(r));
}

IrExpr Frontend::get_member(const AstNode& node) {
  const AstNode* base = node.child("expression");
  std::string member = node.attr_string("memberName");
  if (!base) unsupported(node);
  if (base->kind == NodeKind::Identifier && !table_.lookup(base->name())) {
    std::string qualified = base->name() + "." + member;
    if (qualified == "tx.origin" || qualified == "msg.sender")
      return symbol_ref(environment_symbol(qualified, SolType::address()), SolType::address());
    if (qualified == "msg.value" || qualified == "block.number" || qualified == "block.timestamp")
      return symbol_ref(environment_symbol(qualified, SolType::unsigned_bv(256)), SolType::unsigned_bv(256));
  }
  if (member == "length") {
    IrExpr array = get_expr(*base);
    if (array.type.kind == TypeKind::StaticArray) return constant(SolType::index(), array.type.size);
    if (array.type.kind == TypeKind::DynArray && array.kind == ExprKind::Symbol)
      return symbol_ref(array.symbol + ".length", SolType::index());
    type_error(node.span, "'.length' on " + to_string(array.type));
  }
  unsupported(node, "member '" + member + "'");
}

IrExpr Frontend::get_call(const AstNode& node, std::optional<SolType> expected) {
  std::string kind = node.attr_string("kind");
  const AstNode* callee = node.child("expression");
  auto args = node.children("arguments");
  if (!callee) unsupported(node);

  if (kind == "typeConversion") {
    SolType target;
    const AstNode* tn = callee->kind == NodeKind::ElementaryTypeNameExpression ? callee->child("typeName") : nullptr;
    if (!tn) unsupported(node, "conversion to non-elementary type");
    target = type_of_type_name(*tn);
    if (args.size() != 1) throw Error(ErrorKind::Arity, "type conversion takes one argument", node.span);
    if (auto v = literal_value(*args[0])) return constant(target, from_signed(*v, target.width));
    IrExpr arg = get_expr(*args[0]);
    if (!arg.type.is_bitvector() || !target.is_bitvector())
      type_error(node.span, "explicit conversion from " + to_string(arg.type) + " to " + to_string(target));
    if (arg.type == target) return arg;
    return cast(std::move(arg), target);
  }
  if (kind != "functionCall") unsupported(node, kind);

  Intrinsic intrinsic = classify_intrinsic_call(node);
  if (intrinsic.kind == IntrinsicKind::Nondet) {
    IrExpr e = nondet(intrinsic.type);
    e.span = node.span;
    return e;
  }
  if (intrinsic.kind != IntrinsicKind::None)
    unsupported(node, callee->name() + "() used inside an expression");

  const AstNode* fn = resolve_function(*callee);
  if (!fn) unsupported(node, "call target '" + (callee->kind == NodeKind::Identifier ? callee->name() : callee->node_type) + "'");
  const Symbol& fs = table_.at(function_id(*fn));
  auto params = fn->child("parameters") ? fn->child("parameters")->children("parameters")
                                        : std::vector<const AstNode*>{};
  if (params.size() != args.size())
    throw Error(ErrorKind::Arity,
                "'" + fs.display_name + "' expects " + std::to_string(params.size()) + " arguments",
                node.span);
  std::vector<IrExpr> ir_args;
  for (std::size_t i = 0; i < args.size(); ++i) ir_args.push_back(get_expr(*args[i], declared_type(*params[i])));
  std::optional<SolType> ret = return_type(*fn);
  if (!ret && expected) type_error(node.span, "'" + fs.display_name + "' returns no value");
  note_called(*fn);
  return call(fs.unique_id, ret ? *ret : SolType::boolean(), std::move(ir_args));
}

IrExpr Frontend::get_lvalue(const AstNode& node) {
  if (node.kind == NodeKind::Identifier) {
    const Symbol& s = resolve(node);
    if (s.kind != SymbolKind::StateVar && s.kind != SymbolKind::LocalVar && s.kind != SymbolKind::Param)
      type_error(node.span, "'" + s.display_name + "' is not assignable");
    IrExpr e = symbol_ref(s.unique_id, s.sol_type);
    e.span = node.span;
    return e;
  }
  if (node.kind == NodeKind::IndexAccess) {
    const AstNode* base = node.child("baseExpression");
    if (!base || base->kind != NodeKind::Identifier) unsupported(node, "assignment through nested access");
    IrExpr e = get_expr(node);
    if (e.kind != ExprKind::Index) unsupported(node);
    return e;
  }
  if (node.kind == NodeKind::TupleExpression) {
    auto comps = node.children("components");
    if (comps.size() == 1 && comps[0]) return get_lvalue(*comps[0]);
  }
  unsupported(node, "assignment target");
}

IrExpr Frontend::arithmetic(BinaryOp op, IrExpr lhs, const AstNode& rhs_node, const SourceSpan& span) {
  IrExpr r;
  if (op == BinaryOp::Shl || op == BinaryOp::Shr) {
    r = literal_value(rhs_node) ? constant_expr(rhs_node, std::nullopt) : get_expr(rhs_node);
    return make_shift(op, std::move(lhs), std::move(r), span);
  }
  r = get_expr(rhs_node, lhs.type);
  check_operands(op, lhs.type, span);
  IrExpr e = binary(op, std::move(lhs), std::move(r));
  e.span = span;
  return e;
}

IrStmt Frontend::get_statement(const AstNode& node) {
  IrStmt s;
  s.span = node.span;
  switch (node.kind) {
    case NodeKind::Block: {
      s.kind = StmtKind::Block;
      table_.push_scope();
      for (const AstNode* st : node.children("statements")) s.body.push_back(get_statement(*st));
      table_.pop_scope();
      return s;
    }
    case NodeKind::VariableDeclarationStatement:
      return get_var_decl_stmt(node);
    case NodeKind::ExpressionStatement:
      return get_expression_statement(node);
    case NodeKind::IfStatement: {
      s.kind = StmtKind::If;
      const AstNode* c = node.child("condition");
      const AstNode* t = node.child("trueBody");
      if (!c || !t) unsupported(node);
      s.cond = get_expr(*c, SolType::boolean());
      s.body.push_back(get_statement(*t));
      if (const AstNode* f = node.child("falseBody")) s.body.push_back(get_statement(*f));
      return s;
    }
    case NodeKind::ForStatement: {
      // Children are visited in grammar order: the initialisation declares
      // symbols the condition, increment and body refer to.
      s.kind = StmtKind::For;
      table_.push_scope();
      s.init.emplace();
      s.step.emplace();
      if (const AstNode* init = node.child("initializationExpression")) s.init->push_back(get_statement(*init));
      if (const AstNode* c = node.child("condition")) s.cond = get_expr(*c, SolType::boolean());
      if (const AstNode* inc = node.child("loopExpression")) s.step->push_back(get_statement(*inc));
      if (const AstNode* body = node.child("body")) s.body.push_back(get_statement(*body));
      table_.pop_scope();
      return s;
    }
    case NodeKind::WhileStatement: {
      s.kind = StmtKind::While;
      const AstNode* c = node.child("condition");
      const AstNode* body = node.child("body");
      if (!c || !body) unsupported(node);
      s.cond = get_expr(*c, SolType::boolean());
      s.body.push_back(get_statement(*body));
      return s;
    }
    case NodeKind::Return: {
      s.kind = StmtKind::Return;
      if (!current_) unsupported(node, "return outside a function");
      if (const AstNode* e = node.child("expression")) {
        if (!current_->return_type) type_error(node.span, "return value in function without return type");
        s.expr = get_expr(*e, *current_->return_type);
      }
      return s;
    }
    case NodeKind::Break:
      s.kind = StmtKind::Break;
      return s;
    case NodeKind::Continue:
      s.kind = StmtKind::Continue;
      return s;
    default:
      unsupported(node);
  }
}

IrStmt Frontend::get_expression_statement(const AstNode& node) {
  const AstNode* e = node.child("expression");
  if (!e) unsupported(node);
  IrStmt s;
  s.span = node.span;

  if (e->kind == NodeKind::Assignment) {
    const AstNode* lhs_node = e->child("leftHandSide");
    const AstNode* rhs_node = e->child("rightHandSide");
    if (!lhs_node || !rhs_node) unsupported(*e);
    std::string op = e->attr_string("operator");
    IrExpr rhs;
    IrExpr lhs;
    if (op == "=") {
      // Right-hand side first: it may not see effects of the target.
      lhs = get_lvalue(*lhs_node);
      rhs = get_expr(*rhs_node, lhs.type);
    } else {
      auto bop = binary_op(op.substr(0, op.size() - 1));
      if (!bop || is_comparison(*bop) || is_logical(*bop)) unsupported(*e, "operator " + op);
      lhs = get_lvalue(*lhs_node);
      rhs = arithmetic(*bop, lhs, *rhs_node, e->span);
    }
    s.kind = StmtKind::Assign;
    s.lhs = std::move(lhs);
    s.expr = std::move(rhs);
    return s;
  }
  if (e->kind == NodeKind::UnaryOperation) {
    std::string op = e->attr_string("operator");
    if (op == "++" || op == "--") {
      const AstNode* sub = e->child("subExpression");
      if (!sub) unsupported(*e);
      IrExpr lhs = get_lvalue(*sub);
      if (!lhs.type.is_integer()) type_error(e->span, op + " on " + to_string(lhs.type));
      IrExpr one = constant(lhs.type, 1);
      one.span = e->span;
      IrExpr rhs = binary(op == "++" ? BinaryOp::Add : BinaryOp::Sub, lhs, std::move(one));
      rhs.span = e->span;
      s.kind = StmtKind::Assign;
      s.lhs = std::move(lhs);
      s.expr = std::move(rhs);
      return s;
    }
  }
  if (e->kind == NodeKind::FunctionCall) return get_call_statement(*e);

  s.kind = StmtKind::Expression;
  s.expr = get_expr(*e);
  return s;
}

IrStmt Frontend::get_call_statement(const AstNode& call) {
  IrStmt s;
  s.span = call.span;
  const AstNode* callee = call.child("expression");
  auto args = call.children("arguments");
  if (!callee) unsupported(call);

  Intrinsic intrinsic = classify_intrinsic_call(call);
  if (intrinsic.kind == IntrinsicKind::Assert || intrinsic.kind == IntrinsicKind::Assume) {
    std::string native = intrinsic.kind == IntrinsicKind::Assert ? "assert" : callee->name();
    if (!resolve_function(*callee) && !table_.contains("intrinsic:" + native)) {
      Symbol sym;
      sym.unique_id = "intrinsic:" + native;
      sym.display_name = native;
      sym.sol_type = SolType::boolean();
      sym.kind = SymbolKind::Intrinsic;
      table_.add(std::move(sym), false);
    }
    s.kind = intrinsic.kind == IntrinsicKind::Assert ? StmtKind::Assert : StmtKind::Assume;
    s.expr = get_expr(*args[0], SolType::boolean());
    return s;
  }

  if (callee->kind == NodeKind::Identifier && !resolve_function(*callee)) {
    std::string name = callee->name();
    if (name == "require") {
      if (args.empty() || args.size() > 2)
        throw Error(ErrorKind::Arity, "require expects a condition and an optional message", call.span);
      s.kind = StmtKind::Assume;
      s.expr = get_expr(*args[0], SolType::boolean());
      return s;
    }
    if (name == "revert") {
      s.kind = StmtKind::Assume;
      s.expr = bool_constant(false);
      s.expr->span = call.span;
      return s;
    }
  }

  if (callee->kind == NodeKind::MemberAccess && callee->attr_string("memberName") == "push") {
    const AstNode* base = callee->child("expression");
    if (!base || base->kind != NodeKind::Identifier) unsupported(call, "push on nested expression");
    IrExpr array = get_expr(*base);
    if (array.type.kind != TypeKind::DynArray) type_error(call.span, "push on " + to_string(array.type));
    if (args.size() > 1) throw Error(ErrorKind::Arity, "push takes at most one argument", call.span);
    s.kind = StmtKind::ArrayPush;
    s.symbol = array.symbol;
    s.expr = args.empty() ? zero_value(array.type.element()) : get_expr(*args[0], array.type.element());
    return s;
  }

  s.kind = StmtKind::Expression;
  s.expr = get_expr(call);
  return s;
}

IrStmt Frontend::get_var_decl_stmt(const AstNode& node) {
  IrStmt s;
  s.kind = StmtKind::Decl;
  s.span = node.span;
  if (node.kind == NodeKind::VariableDeclaration) {
    // State variable.
    if (node.attr_bool("constant") || node.attr_string("mutability") == "immutable" ||
        node.attr_string("mutability") == "constant" || node.attr_string("mutability") == "mutable") {
      SolType type = declared_type(node);
      const AstNode* value = node.child("value");
      s.expr = value ? get_expr(*value, type) : zero_value(type);
      s.symbol = declare_variable(node, SymbolKind::StateVar, contract_prefix()).unique_id;
      return s;
    }
    unsupported(node);
  }
  if (node.kind != NodeKind::VariableDeclarationStatement) unsupported(node, "expected a declaration");
  auto decls = node.children("declarations");
  if (decls.size() != 1 || !decls[0]) unsupported(node, "tuple declarations");
  if (!current_) unsupported(node, "local declaration outside a function");
  const AstNode& decl = *decls[0];
  SolType type = declared_type(decl);
  const AstNode* init = node.child("initialValue");
  s.expr = init ? get_expr(*init, type) : zero_value(type);
  s.expr->span = init ? init->span : decl.span;
  s.symbol = declare_variable(decl, SymbolKind::LocalVar, current_->id + "::").unique_id;
  return s;
}

IrStmt Frontend::convert_function(const AstNode& function) {
  const std::string& fid = function_id(function);
  if (!function.attr_bool("implemented") && !function.child("body"))
    unsupported(function, "function without body");
  if (!function.children("modifiers").empty()) unsupported(function, "modifiers");

  FunctionContext ctx;
  ctx.node = &function;
  ctx.id = fid;
  ctx.return_type = return_type(function);
  auto saved = current_;
  current_ = ctx;

  table_.push_scope();
  std::vector<std::string> param_ids;
  const AstNode* params = function.child("parameters");
  int anon = 0;
  for (const AstNode* p : params ? params->children("parameters") : std::vector<const AstNode*>{}) {
    if (p->name().empty()) {
      Symbol s;
      s.unique_id = fid + "::$arg" + std::to_string(anon++);
      s.display_name = "";
      s.sol_type = declared_type(*p);
      s.kind = SymbolKind::Param;
      s.location = p->span;
      s.ast_id = p->id;
      param_ids.push_back(table_.add(std::move(s), false).unique_id);
    } else {
      param_ids.push_back(declare_variable(*p, SymbolKind::Param, fid + "::").unique_id);
    }
  }
  std::optional<std::string> ret_id;
  if (const AstNode* rets = function.child("returnParameters")) {
    for (const AstNode* r : rets->children("parameters")) {
      if (r->name().empty()) {
        Symbol s;
        s.unique_id = fid + "::$return";
        s.display_name = "return";
        s.sol_type = *ctx.return_type;
        s.kind = SymbolKind::LocalVar;
        s.location = r->span;
        s.ast_id = r->id;
        ret_id = table_.add(std::move(s), false).unique_id;
      } else {
        ret_id = declare_variable(*r, SymbolKind::LocalVar, fid + "::").unique_id;
      }
    }
  }
  if (Symbol* fs = table_.find_mutable(fid)) {
    fs->params = param_ids;
    fs->return_symbol = ret_id;
  }

  IrStmt body;
  body.kind = StmtKind::Block;
  body.span = function.span;
  if (const AstNode* b = function.child("body")) body = get_statement(*b);
  table_.pop_scope();
  current_ = saved;
  return body;
}

ConvertedProgram build_symbol_table(const AstRoot& root, std::string_view entry) {
  const AstNode& fn = find_function(root, entry);
  const AstNode& contract = enclosing_contract(root, fn);
  Frontend frontend(root, contract);
  frontend.register_contract();

  ConvertedProgram out;
  out.contract_name = contract.name();
  out.entry_id = frontend.function_id(fn);
  out.bodies[out.entry_id] = frontend.convert_function(fn);
  for (std::size_t i = 0; i < frontend.called_functions().size(); ++i) {
    const AstNode* callee = frontend.called_functions()[i];
    const std::string& id = frontend.function_id(*callee);
    if (!out.bodies.count(id)) out.bodies[id] = frontend.convert_function(*callee);
  }
  out.state_init = frontend.state_init();
  out.environment = frontend.environment();
  out.table = std::move(frontend.table());
  return out;
}

}  // namespace solbmc
