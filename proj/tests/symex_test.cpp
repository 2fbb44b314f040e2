#include "doctest.h"

#include <set>

#include "solbmc/bench.hpp"
#include "solbmc/error.hpp"
#include "solbmc/eval.hpp"
#include "solbmc/symex.hpp"
#include "test_support.hpp"

using namespace solbmc;
using namespace solbmc::test;

namespace {

struct Prepared {
  GotoProgram program;
  SsaProgram ssa;
};

Prepared run_symex(AstRoot root, const std::string& fn, bool checks = true, bool propagate = true) {
  RunConfig cfg;
  cfg.function = fn;
  cfg.overflow_check = cfg.bounds_check = cfg.div_check = checks;
  cfg.constant_propagation = propagate;
  PreparedRun r = prepare(std::move(root), cfg);
  return {std::move(r.program), std::move(r.ssa)};
}

const SsaEquation* last_assignment(const SsaProgram& ssa, const std::string& base) {
  const SsaEquation* out = nullptr;
  for (const SsaEquation& eq : ssa.equations)
    if (eq.kind == EquationKind::Assignment && eq.lhs.base == base) out = &eq;
  return out;
}

/// Concrete check of C and not-P for one assignment of the nondet inputs.
/// Returns true when every constraint holds and the property is false.
bool violates(const SsaProgram& ssa, const Vc& vc, const std::vector<BigUint>& inputs) {
  std::map<std::string, Value> env;
  for (std::size_t k = 0; k < ssa.nondets.size(); ++k)
    env[ssa.nondets[k].symbol.name()] = Value{k < inputs.size() ? inputs[k] : BigUint(0), {}};
  auto lookup = [&](const IrExpr& s) {
    auto it = env.find(s.symbol + "#" + std::to_string(s.version));
    return it == env.end() ? Value{} : it->second;
  };
  for (std::size_t i : vc.constraints) {
    const SsaEquation& eq = ssa.equations[i];
    if (eq.kind == EquationKind::Assignment) env[eq.lhs.name()] = evaluate(eq.rhs, lookup);
    else if (eq.kind == EquationKind::Assumption && evaluate(eq.rhs, lookup).bits == 0) return false;
  }
  return evaluate(vc.property, lookup).bits == 0;
}

int user_claim(const GotoProgram& p) {
  for (const Claim& c : p.claims)
    if (c.category == ClaimCategory::UserAssert) return c.id;
  return 0;
}

}  // namespace

TEST_CASE("func_sat equations") {
  Prepared r = run_symex(load_bench("suite", "FUNC_SAT"), "func_sat");
  std::string text = show_ssa(r.ssa);
  CHECK(text.find("c:MyContract@func_sat::y#1 = nondet#0\n") != std::string::npos);
  CHECK(text.find("c:MyContract@sum#2 = c:MyContract@func_sat::y#1\n") != std::string::npos);
  CHECK(text.find("ASSUME c:MyContract@func_sat::y#1 < 255\n") != std::string::npos);
  CHECK(text.find("ASSUME c:MyContract@func_sat::y#1 > 220\n") != std::string::npos);
  CHECK(text.find("ASSUME c:MyContract@func_sat::y#1 != 224\n") != std::string::npos);
  CHECK(text.find("temp#1 = c:MyContract@sum#2 % 16\n") != std::string::npos);

  Prepared plain = run_symex(load_bench("suite", "FUNC_SAT"), "func_sat", true, false);
  CHECK(show_ssa(plain.ssa).find("c:MyContract@sum#2 = c:MyContract@x#2 + c:MyContract@func_sat::y#1\n") !=
        std::string::npos);
}

TEST_CASE("func_sat ssa dump matches the golden file") {
  Prepared r = run_symex(load_bench("suite", "FUNC_SAT"), "func_sat");
  CHECK(show_ssa(r.ssa) == read_file(std::string(SOLBMC_GOLDEN_DIR) + "/func_sat.ssa"));
}

TEST_CASE("func_sat verification condition") {
  Prepared r = run_symex(load_bench("suite", "FUNC_SAT"), "func_sat");
  int claim = user_claim(r.program);
  Vc vc = generate_vc(r.ssa, claim);
  CHECK(vc.claim == claim);
  REQUIRE(vc.instances.size() == 1);
  CHECK(to_string(vc.property) == "temp#1 != 0");
  std::size_t assumptions = 0;
  for (std::size_t i : vc.constraints) assumptions += r.ssa.equations[i].kind == EquationKind::Assumption;
  CHECK(assumptions == 3);

  // Oracle: y in (220, 255), y != 224, y % 16 == 0.
  std::vector<unsigned> expected, found;
  for (unsigned y = 0; y < 256; ++y) {
    if (y < 255 && y > 220 && y != 224 && y % 16 == 0) expected.push_back(y);
    if (violates(r.ssa, vc, {y})) found.push_back(y);
  }
  CHECK(expected == std::vector<unsigned>{240});
  CHECK(found == expected);
}

TEST_CASE("dual contract has no violating input") {
  Prepared r = run_symex(load_bench("safe", "FUNC_SAT_dual"), "func_sat");
  Vc vc = generate_vc(r.ssa, user_claim(r.program));
  for (unsigned y = 0; y < 256; ++y) CHECK_FALSE(violates(r.ssa, vc, {y}));
}

TEST_CASE("straight-line reassignment gets fresh versions") {
  Prepared r = run_symex(load_fixture("ifelse"), "straight");
  std::vector<std::pair<int, BigUint>> versions;
  for (const SsaEquation& eq : r.ssa.equations)
    if (eq.kind == EquationKind::Assignment && eq.lhs.base == "c:Branch@a")
      versions.emplace_back(eq.lhs.version, eq.rhs.value);
  REQUIRE(versions.size() == 3);
  CHECK(versions[1] == std::pair<int, BigUint>{2, 1});
  CHECK(versions[2] == std::pair<int, BigUint>{3, 2});
}

TEST_CASE("branch merge is an ite over both versions") {
  Prepared r = run_symex(load_fixture("ifelse"), "run");
  const SsaEquation* merged = last_assignment(r.ssa, "c:Branch@a");
  REQUIRE(merged);
  CHECK(merged->lhs.version == 4);
  CHECK(merged->hidden);
  CHECK(merged->rhs.kind == ExprKind::Ite);
  REQUIRE(r.ssa.nondets.size() == 1);
  for (unsigned c = 0; c < 2; ++c) {
    std::map<std::string, Value> env{{r.ssa.nondets[0].symbol.name(), Value{c, {}}}};
    auto lookup = [&](const IrExpr& s) { return env[s.symbol + "#" + std::to_string(s.version)]; };
    for (const SsaEquation& eq : r.ssa.equations)
      if (eq.kind == EquationKind::Assignment) env[eq.lhs.name()] = evaluate(eq.rhs, lookup);
    CHECK(env.at("c:Branch@a#4").bits == (c ? 1 : 2));
  }
}

TEST_CASE("asserting true and unreachable assertions give a true property") {
  for (const char* fn : {"trueAssert", "unreachable"}) {
    CAPTURE(fn);
    Prepared r = run_symex(load_fixture("arith"), fn);
    Vc vc = generate_vc(r.ssa, user_claim(r.program));
    CHECK(vc.property.is_true());
  }
  Prepared f = run_symex(load_fixture("arith"), "falseAssert");
  Vc vc = generate_vc(f.ssa, user_claim(f.program));
  CHECK(vc.property.is_false());
}

TEST_CASE("unknown claim") {
  Prepared r = run_symex(load_fixture("arith"), "add");
  try {
    generate_vc(r.ssa, 999);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownClaim);
  }
}

TEST_CASE("simplifier folds constants and identities") {
  SolType u8 = SolType::unsigned_bv(8);
  IrExpr x = symbol_ref("x", u8);
  CHECK(simplify(binary(BinaryOp::Add, constant(u8, 200), constant(u8, 100))) == constant(u8, 44));
  CHECK(simplify(binary(BinaryOp::Add, x, constant(u8, 0))) == x);
  CHECK(simplify(binary(BinaryOp::And, bool_constant(true), binary(BinaryOp::Lt, x, constant(u8, 3)))) ==
        binary(BinaryOp::Lt, x, constant(u8, 3)));
  CHECK(simplify(implication(bool_constant(false), bool_constant(false))).is_true());
}

TEST_CASE("single assignment over the corpus") {
  std::vector<std::pair<AstRoot, std::string>> inputs;
  for (const char* suite : {"suite", "safe"})
    for (const BenchCase& c : load_suite(std::string(SOLBMC_BENCH_DIR) + "/" + suite))
      inputs.emplace_back(load_ast_file((c.dir / "ast.json").string()), c.function);
  for (auto [stem, fn] : std::vector<std::pair<std::string, std::string>>{
           {"arith", "signedOps"}, {"bounds", "dynTen"}, {"calls", "run"}, {"loops", "nested"},
           {"loops", "withBreak"}, {"ifelse", "run"}})
    inputs.emplace_back(load_fixture(stem), fn);
  for (auto& [root, fn] : inputs) {
    CAPTURE(fn);
    Prepared r = run_symex(std::move(root), fn);
    std::set<std::string> seen;
    for (const SsaEquation& eq : r.ssa.equations)
      if (eq.kind == EquationKind::Assignment) CHECK_MESSAGE(seen.insert(eq.lhs.name()).second, eq.lhs.name());
    for (const NondetInput& n : r.ssa.nondets) CHECK(seen.insert(n.symbol.name()).second);
  }
}
