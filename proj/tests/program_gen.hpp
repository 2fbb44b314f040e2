#ifndef SOLBMC_PROGRAM_GEN_HPP
#define SOLBMC_PROGRAM_GEN_HPP

// Random straight-line contracts over at most two uint8 nondet inputs, with
// a solc-shaped compact JSON AST builder and an exhaustive 8-bit oracle.

#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace solbmc::test {

struct GenExpr {
  enum Kind { Var, Lit, Bin } kind = Lit;
  std::string var;
  unsigned lit = 0;
  std::string op;
  std::shared_ptr<GenExpr> lhs, rhs;
};
using GenExprP = std::shared_ptr<GenExpr>;

struct GenStmt {
  enum Kind { Decl, Assign, Require, Assert, Open, Close } kind = Decl;
  std::string var;     // Decl / Assign
  GenExprP value;      // Decl / Assign; left side of a condition
  std::string cmp;     // Require / Assert
  GenExprP bound;      // right side of a condition
};

struct GenProgram {
  unsigned inputs = 1;  // a, then b
  std::vector<GenStmt> stmts;
};

struct OracleVerdict {
  bool assert_fails = false;  // some input reaches a false assert
  bool check_fails = false;   // some input reaches a wrap, underflow or zero divisor
};

namespace gen_detail {

inline bool has_var(const GenExprP& e) {
  return e->kind == GenExpr::Var || (e->kind == GenExpr::Bin && (has_var(e->lhs) || has_var(e->rhs)));
}

inline unsigned eval(const GenExpr& e, const std::map<std::string, unsigned>& env, bool& check) {
  if (e.kind == GenExpr::Var) return env.at(e.var);
  if (e.kind == GenExpr::Lit) return e.lit;
  unsigned a = eval(*e.lhs, env, check);
  unsigned b = eval(*e.rhs, env, check);
  const std::string& op = e.op;
  if (op == "+") {
    check = check || a + b > 255;
    return (a + b) & 0xff;
  }
  if (op == "-") {
    check = check || a < b;
    return (a - b) & 0xff;
  }
  if (op == "*") {
    check = check || a * b > 255;
    return (a * b) & 0xff;
  }
  if (op == "/") {
    check = check || b == 0;
    return b == 0 ? 255 : a / b;
  }
  if (op == "%") {
    check = check || b == 0;
    return b == 0 ? a : a % b;
  }
  if (op == "&") return a & b;
  if (op == "|") return a | b;
  return a ^ b;
}

inline bool compare(const std::string& cmp, unsigned a, unsigned b) {
  if (cmp == "==") return a == b;
  if (cmp == "!=") return a != b;
  if (cmp == "<") return a < b;
  if (cmp == "<=") return a <= b;
  if (cmp == ">") return a > b;
  return a >= b;
}

}  // namespace gen_detail

/// Exhaustive enumeration over every input valuation. Unchecked arithmetic
/// wraps; x / 0 yields 255 and x % 0 yields x.
inline OracleVerdict enumerate(const GenProgram& p) {
  OracleVerdict v;
  const unsigned n = p.inputs == 1 ? 256 : 65536;
  for (unsigned k = 0; k < n; ++k) {
    std::map<std::string, unsigned> env{{"a", k & 0xff}, {"b", k >> 8}};
    for (const GenStmt& s : p.stmts) {
      bool check = false;
      if (s.kind == GenStmt::Decl || s.kind == GenStmt::Assign) {
        env[s.var] = gen_detail::eval(*s.value, env, check);
        v.check_fails = v.check_fails || check;
      } else if (s.kind == GenStmt::Require || s.kind == GenStmt::Assert) {
        unsigned l = gen_detail::eval(*s.value, env, check);
        unsigned r = gen_detail::eval(*s.bound, env, check);
        v.check_fails = v.check_fails || check;
        bool holds = gen_detail::compare(s.cmp, l, r);
        if (s.kind == GenStmt::Require && !holds) break;
        if (s.kind == GenStmt::Assert && !holds) v.assert_fails = true;
      }
    }
  }
  return v;
}

/// Range of `e` at the assert over all inputs that pass every require.
inline std::pair<unsigned, unsigned> value_range(const GenProgram& p, const GenExprP& e) {
  unsigned lo = 255, hi = 0;
  const unsigned n = p.inputs == 1 ? 256 : 65536;
  for (unsigned k = 0; k < n; ++k) {
    std::map<std::string, unsigned> env{{"a", k & 0xff}, {"b", k >> 8}};
    bool check = false, blocked = false;
    for (const GenStmt& s : p.stmts) {
      if (s.kind == GenStmt::Decl || s.kind == GenStmt::Assign) env[s.var] = gen_detail::eval(*s.value, env, check);
      if (s.kind == GenStmt::Require &&
          !gen_detail::compare(s.cmp, gen_detail::eval(*s.value, env, check), gen_detail::eval(*s.bound, env, check))) {
        blocked = true;
        break;
      }
    }
    if (blocked) continue;
    unsigned v = gen_detail::eval(*e, env, check);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

class ProgramGenerator {
 public:
  explicit ProgramGenerator(unsigned seed) : rng_(seed) {}

  GenProgram next() {
    GenProgram p;
    p.inputs = pick(1, 2);
    std::vector<std::vector<std::string>> scopes{{"a"}};
    if (p.inputs == 2) scopes.back().push_back("b");
    auto visible = [&] {
      std::vector<std::string> out;
      for (auto& s : scopes) out.insert(out.end(), s.begin(), s.end());
      return out;
    };
    unsigned temps = 0;
    unsigned count = pick(1, 4);
    for (unsigned i = 0; i < count; ++i) {
      unsigned roll = pick(0, 9);
      if (roll == 0 && scopes.size() < 3) {
        p.stmts.push_back({GenStmt::Open, "", nullptr, "", nullptr});
        scopes.emplace_back();
      } else if (roll == 1 && scopes.size() > 1) {
        p.stmts.push_back({GenStmt::Close, "", nullptr, "", nullptr});
        scopes.pop_back();
      }
      auto vars = visible();
      std::vector<std::string> temps_visible;
      for (auto& v : vars)
        if (v != "a" && v != "b") temps_visible.push_back(v);
      if (roll >= 8 && !temps_visible.empty()) {
        p.stmts.push_back({GenStmt::Assign, temps_visible[pick(0, temps_visible.size() - 1)], expr(vars, 2), "", nullptr});
      } else {
        std::string name = "t" + std::to_string(++temps);
        p.stmts.push_back({GenStmt::Decl, name, expr(vars, 2), "", nullptr});
        scopes.back().push_back(name);
      }
    }
    while (scopes.size() > 1) {
      p.stmts.push_back({GenStmt::Close, "", nullptr, "", nullptr});
      scopes.pop_back();
    }
    auto vars = visible();
    if (pick(0, 2) == 0)
      p.stmts.push_back({GenStmt::Require, "", leaf_var(vars), comparison(), literal(pick(0, 255))});

    GenExprP checked = pick(0, 1) ? leaf_var(std::vector<std::string>(vars.end() - 1, vars.end())) : expr(vars, 1);
    if (!gen_detail::has_var(checked)) checked = leaf_var(vars);
    if (pick(0, 1) == 0) {
      // An assertion that holds on every admissible input.
      auto [lo, hi] = value_range(p, checked);
      if (pick(0, 1)) p.stmts.push_back({GenStmt::Assert, "", checked, "<=", literal(hi)});
      else p.stmts.push_back({GenStmt::Assert, "", checked, ">=", literal(lo)});
    } else {
      p.stmts.push_back({GenStmt::Assert, "", checked, comparison(), literal(pick(0, 255))});
    }
    return p;
  }

 private:
  unsigned pick(unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(rng_); }

  std::string comparison() {
    static const char* ops[] = {"==", "!=", "<", "<=", ">", ">="};
    return ops[pick(0, 5)];
  }

  static GenExprP literal(unsigned v) {
    auto e = std::make_shared<GenExpr>();
    e->kind = GenExpr::Lit;
    e->lit = v;
    return e;
  }

  GenExprP leaf_var(const std::vector<std::string>& vars) {
    auto e = std::make_shared<GenExpr>();
    e->kind = GenExpr::Var;
    e->var = vars[pick(0, vars.size() - 1)];
    return e;
  }

  GenExprP expr(const std::vector<std::string>& vars, unsigned depth) {
    if (depth == 0 || pick(0, 2) == 0) return pick(0, 3) ? leaf_var(vars) : literal(pick(0, 255));
    static const char* ops[] = {"+", "-", "*", "/", "%", "&", "|", "^"};
    auto e = std::make_shared<GenExpr>();
    e->kind = GenExpr::Bin;
    e->op = ops[pick(0, 7)];
    e->lhs = expr(vars, depth - 1);
    e->rhs = expr(vars, depth - 1);
    if (!gen_detail::has_var(e)) e->lhs = leaf_var(vars);
    // A constant zero divisor is a compile-time error in Solidity.
    if ((e->op == "/" || e->op == "%") && e->rhs->kind == GenExpr::Lit && e->rhs->lit == 0) e->rhs->lit = pick(1, 255);
    return e;
  }

  std::mt19937 rng_;
};

inline std::string to_solidity(const GenExpr& e) {
  if (e.kind == GenExpr::Var) return e.var;
  if (e.kind == GenExpr::Lit) return std::to_string(e.lit);
  return "(" + to_solidity(*e.lhs) + " " + e.op + " " + to_solidity(*e.rhs) + ")";
}

inline std::string to_solidity(const GenProgram& p) {
  std::ostringstream out;
  out << "pragma solidity >=0.4.26;\ncontract Generated {\n"
      << "  function nondet() public pure returns (uint8) {\n    uint8 v;\n    return v;\n  }\n"
      << "  function f() external {\n    uint8 a = nondet();\n";
  if (p.inputs == 2) out << "    uint8 b = nondet();\n";
  std::string indent = "    ";
  for (const GenStmt& s : p.stmts) {
    switch (s.kind) {
      case GenStmt::Decl: out << indent << "uint8 " << s.var << " = " << to_solidity(*s.value) << ";\n"; break;
      case GenStmt::Assign: out << indent << s.var << " = " << to_solidity(*s.value) << ";\n"; break;
      case GenStmt::Require:
      case GenStmt::Assert:
        out << indent << (s.kind == GenStmt::Require ? "require(" : "assert(") << to_solidity(*s.value) << " " << s.cmp
            << " " << to_solidity(*s.bound) << ");\n";
        break;
      case GenStmt::Open:
        out << indent << "{\n";
        indent += "  ";
        break;
      case GenStmt::Close:
        indent.resize(indent.size() - 2);
        out << indent << "}\n";
        break;
    }
  }
  out << "  }\n}\n";
  return out.str();
}

/// Emits the compact JSON AST solc produces for `to_solidity(p)`, down to
/// the attributes the decoder reads.
class AstBuilder {
 public:
  nlohmann::json build(const GenProgram& p) {
    nlohmann::json nondet_fn = nondet_function();
    nondet_id_ = nondet_fn["id"];

    scopes_.assign(1, {});
    std::vector<nlohmann::json> stmts;
    stmts.push_back(decl_statement("a", nondet_call()));
    if (p.inputs == 2) stmts.push_back(decl_statement("b", nondet_call()));
    std::vector<std::vector<nlohmann::json>*> blocks{&stmts};
    std::vector<std::unique_ptr<std::vector<nlohmann::json>>> open;
    for (const GenStmt& s : p.stmts) {
      auto& out = *blocks.back();
      switch (s.kind) {
        case GenStmt::Decl: out.push_back(decl_statement(s.var, expr(*s.value))); break;
        case GenStmt::Assign: {
          nlohmann::json a = node("Assignment");
          a["operator"] = "=";
          a["leftHandSide"] = identifier(s.var);
          a["rightHandSide"] = expr(*s.value);
          a["typeDescriptions"] = type("uint8", "t_uint8");
          out.push_back(expression_statement(std::move(a)));
          break;
        }
        case GenStmt::Require:
        case GenStmt::Assert: {
          bool req = s.kind == GenStmt::Require;
          nlohmann::json cond = binary(s.cmp, expr(*s.value), expr(*s.bound), true);
          nlohmann::json callee = node("Identifier");
          callee["name"] = req ? "require" : "assert";
          callee["referencedDeclaration"] = req ? -18 : -3;
          callee["overloadedDeclarations"] = req ? nlohmann::json::array({-18, -18}) : nlohmann::json::array();
          callee["typeDescriptions"] = type("function (bool) pure", "t_function_" + std::string(req ? "require" : "assert") + "_pure$_t_bool_$returns$__$");
          nlohmann::json call = node("FunctionCall");
          call["expression"] = std::move(callee);
          call["arguments"] = nlohmann::json::array({std::move(cond)});
          call["kind"] = "functionCall";
          call["names"] = nlohmann::json::array();
          call["typeDescriptions"] = type("tuple()", "t_tuple$__$");
          out.push_back(expression_statement(std::move(call)));
          break;
        }
        case GenStmt::Open:
          open.push_back(std::make_unique<std::vector<nlohmann::json>>());
          blocks.push_back(open.back().get());
          scopes_.emplace_back();
          break;
        case GenStmt::Close: {
          nlohmann::json b = node("Block");
          b["statements"] = *blocks.back();
          blocks.pop_back();
          scopes_.pop_back();
          blocks.back()->push_back(std::move(b));
          break;
        }
      }
    }
    nlohmann::json body = node("Block");
    body["statements"] = stmts;
    nlohmann::json f = function("f", "external", "nonpayable", parameter_list({}), parameter_list({}), body);

    nlohmann::json contract = node("ContractDefinition");
    contract["name"] = "Generated";
    contract["contractKind"] = "contract";
    contract["abstract"] = false;
    contract["baseContracts"] = nlohmann::json::array();
    contract["linearizedBaseContracts"] = nlohmann::json::array({contract["id"]});
    contract["nodes"] = nlohmann::json::array({nondet_fn, f});
    nlohmann::json pragma = node("PragmaDirective");
    pragma["literals"] = {"solidity", ">=", "0.4", ".26"};
    nlohmann::json unit = node("SourceUnit");
    unit["absolutePath"] = "generated.sol";
    unit["nodes"] = nlohmann::json::array({pragma, contract});
    return unit;
  }

 private:
  nlohmann::json node(const char* kind) {
    nlohmann::json j;
    j["id"] = next_id_++;
    j["nodeType"] = kind;
    j["src"] = std::to_string(offset_) + ":1:0";
    ++offset_;
    return j;
  }

  static nlohmann::json type(const std::string& ts, const std::string& ti) {
    return {{"typeString", ts}, {"typeIdentifier", ti}};
  }

  nlohmann::json uint8_name() {
    nlohmann::json t = node("ElementaryTypeName");
    t["name"] = "uint8";
    t["typeDescriptions"] = type("uint8", "t_uint8");
    return t;
  }

  nlohmann::json variable(const std::string& name) {
    nlohmann::json v = node("VariableDeclaration");
    v["name"] = name;
    v["constant"] = false;
    v["mutability"] = "mutable";
    v["stateVariable"] = false;
    v["storageLocation"] = "default";
    v["visibility"] = "internal";
    v["typeName"] = uint8_name();
    v["typeDescriptions"] = type("uint8", "t_uint8");
    if (!name.empty()) scopes_.back()[name] = v["id"];
    return v;
  }

  nlohmann::json decl_statement(const std::string& name, nlohmann::json init) {
    nlohmann::json s = node("VariableDeclarationStatement");
    nlohmann::json v = variable(name);
    s["assignments"] = nlohmann::json::array({v["id"]});
    s["declarations"] = nlohmann::json::array({std::move(v)});
    if (!init.is_null()) s["initialValue"] = std::move(init);
    return s;
  }

  nlohmann::json expression_statement(nlohmann::json e) {
    nlohmann::json s = node("ExpressionStatement");
    s["expression"] = std::move(e);
    return s;
  }

  nlohmann::json identifier(const std::string& name) {
    nlohmann::json id = node("Identifier");
    id["name"] = name;
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
      if (auto f = it->find(name); f != it->end()) {
        id["referencedDeclaration"] = f->second;
        break;
      }
    id["overloadedDeclarations"] = nlohmann::json::array();
    id["typeDescriptions"] = type("uint8", "t_uint8");
    return id;
  }

  nlohmann::json literal(unsigned v) {
    nlohmann::json l = node("Literal");
    l["kind"] = "number";
    l["value"] = std::to_string(v);
    l["typeDescriptions"] = type("int_const " + std::to_string(v), "t_rational_" + std::to_string(v) + "_by_1");
    return l;
  }

  nlohmann::json binary(const std::string& op, nlohmann::json l, nlohmann::json r, bool boolean) {
    nlohmann::json b = node("BinaryOperation");
    b["operator"] = op;
    b["leftExpression"] = std::move(l);
    b["rightExpression"] = std::move(r);
    b["commonType"] = type("uint8", "t_uint8");
    b["typeDescriptions"] = boolean ? type("bool", "t_bool") : type("uint8", "t_uint8");
    return b;
  }

  nlohmann::json expr(const GenExpr& e) {
    if (e.kind == GenExpr::Var) return identifier(e.var);
    if (e.kind == GenExpr::Lit) return literal(e.lit);
    nlohmann::json l = expr(*e.lhs);
    nlohmann::json r = expr(*e.rhs);
    nlohmann::json b = binary(e.op, std::move(l), std::move(r), false);
    nlohmann::json t = node("TupleExpression");
    t["components"] = nlohmann::json::array({std::move(b)});
    t["isInlineArray"] = false;
    t["typeDescriptions"] = type("uint8", "t_uint8");
    return t;
  }

  nlohmann::json nondet_call() {
    nlohmann::json callee = node("Identifier");
    callee["name"] = "nondet";
    callee["referencedDeclaration"] = nondet_id_;
    callee["overloadedDeclarations"] = nlohmann::json::array();
    callee["typeDescriptions"] = type("function () pure returns (uint8)", "t_function_internal_pure$__$returns$_t_uint8_$");
    nlohmann::json call = node("FunctionCall");
    call["expression"] = std::move(callee);
    call["arguments"] = nlohmann::json::array();
    call["kind"] = "functionCall";
    call["names"] = nlohmann::json::array();
    call["typeDescriptions"] = type("uint8", "t_uint8");
    return call;
  }

  nlohmann::json parameter_list(std::vector<nlohmann::json> params) {
    nlohmann::json l = node("ParameterList");
    l["parameters"] = params;
    return l;
  }

  nlohmann::json function(const std::string& name, const char* visibility, const char* mutability,
                          nlohmann::json params, nlohmann::json returns, nlohmann::json body) {
    nlohmann::json f = node("FunctionDefinition");
    f["name"] = name;
    f["kind"] = "function";
    f["implemented"] = true;
    f["modifiers"] = nlohmann::json::array();
    f["visibility"] = visibility;
    f["stateMutability"] = mutability;
    f["virtual"] = false;
    f["parameters"] = std::move(params);
    f["returnParameters"] = std::move(returns);
    f["body"] = std::move(body);
    return f;
  }

  nlohmann::json nondet_function() {
    scopes_.assign(1, {});
    nlohmann::json ret = parameter_list({variable("")});
    nlohmann::json body = node("Block");
    nlohmann::json decl = decl_statement("v", nullptr);
    nlohmann::json r = node("Return");
    r["expression"] = identifier("v");
    r["functionReturnParameters"] = ret["id"];
    body["statements"] = nlohmann::json::array({std::move(decl), std::move(r)});
    return function("nondet", "public", "pure", parameter_list({}), std::move(ret), std::move(body));
  }

  std::int64_t next_id_ = 1;
  std::uint64_t offset_ = 0;
  std::int64_t nondet_id_ = 0;
  std::vector<std::map<std::string, std::int64_t>> scopes_;
};

}  // namespace solbmc::test

#endif  // SOLBMC_PROGRAM_GEN_HPP
