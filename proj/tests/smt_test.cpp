#include "doctest.h"

#include "solbmc/error.hpp"
#include "solbmc/smt.hpp"
#include "test_support.hpp"

using namespace solbmc;
using namespace solbmc::test;

namespace {

SolverConfig z3(double timeout = 30) { return SolverConfig{SOLBMC_Z3, {}, timeout}; }

struct Case {
  PreparedRun run;
  SmtScript script(int claim) const { return encode(run.ssa, generate_vc(run.ssa, claim)); }
};

Case prepared(AstRoot root, const std::string& fn) {
  RunConfig cfg;
  cfg.function = fn;
  return {prepare(std::move(root), cfg)};
}

int claim_of(const GotoProgram& p, ClaimCategory category) {
  for (const Claim& c : p.claims)
    if (c.category == category) return c.id;
  FAIL("no claim of category " << to_string(category));
  return 0;
}

/// Exhaustive search over every nondet input of the program for a run that
/// fails `claim`. Only usable for at most two 8-bit inputs.
bool enumerate_violation(const GotoProgram& p, int claim) {
  auto sites = nondet_sites(p);
  REQUIRE(sites.size() <= 2);
  for (const auto& s : sites) REQUIRE(s.type.width <= 8);
  unsigned n = sites.size() == 0 ? 1 : sites.size() == 1 ? 256 : 65536;
  for (unsigned v = 0; v < n; ++v) {
    ExecutionResult r = interpret(p, assign_sites(sites, {v & 0xff, v >> 8}));
    for (int id : r.failed_claims)
      if (id == claim) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("func_sat model forces y to 240") {
  Case c = prepared(load_bench("suite", "FUNC_SAT"), "func_sat");
  SmtScript s = c.script(claim_of(c.run.program, ClaimCategory::UserAssert));
  CHECK(s.logic == "QF_BV");
  CHECK(s.text.rfind("(set-option :produce-models true)\n(set-logic QF_BV)\n", 0) == 0);
  CHECK(s.text.find("(check-sat)") != std::string::npos);
  SolverVerdict v = solve(s, z3());
  REQUIRE(v.kind == VerdictKind::Sat);
  CHECK(v.model.at("c:MyContract@func_sat::y#1") == 240);
  for (const auto& [name, type] : s.declarations)
    if (auto it = v.model.find(name); it != v.model.end()) CHECK(it->second <= mask(type.width));
}

TEST_CASE("true property encodes as assert false and is unsat") {
  Case c = prepared(load_fixture("arith"), "trueAssert");
  SmtScript s = c.script(claim_of(c.run.program, ClaimCategory::UserAssert));
  CHECK(s.text.find("(assert false)") != std::string::npos);
  CHECK(solve(s, z3()).kind == VerdictKind::Unsat);
}

TEST_CASE("overflow check uses a widened equality and finds a wrapping pair") {
  Case c = prepared(load_fixture("arith"), "addNondet");
  SmtScript s = c.script(claim_of(c.run.program, ClaimCategory::Overflow));
  CHECK(s.text.find("(_ zero_extend 8)") != std::string::npos);
  SolverVerdict v = solve(s, z3());
  REQUIRE(v.kind == VerdictKind::Sat);
  REQUIRE(c.run.ssa.nondets.size() == 2);
  BigUint a = v.model.at(c.run.ssa.nondets[0].symbol.name());
  BigUint b = v.model.at(c.run.ssa.nondets[1].symbol.name());
  CHECK(a + b > 255);
}

TEST_CASE("script text is byte-deterministic") {
  for (auto [stem, fn] : std::vector<std::pair<std::string, std::string>>{
           {"arith", "addNondet"}, {"bounds", "storeRead"}, {"loops", "nested"}}) {
    Case a = prepared(load_fixture(stem), fn);
    Case b = prepared(load_fixture(stem), fn);
    for (const Claim& claim : a.run.program.claims) CHECK(a.script(claim.id).text == b.script(claim.id).text);
  }
}

TEST_CASE("verdicts agree with exhaustive enumeration") {
  for (auto [stem, fn] : std::vector<std::pair<std::string, std::string>>{
           {"arith", "add"}, {"arith", "addNondet"}, {"arith", "subZero"}, {"arith", "signedOps"},
           {"arith", "shifts"}, {"arith", "falseAssert"}, {"bounds", "readNondet"}, {"bounds", "storeRead"}}) {
    Case c = prepared(load_fixture(stem), fn);
    for (const Claim& claim : c.run.program.claims) {
      CAPTURE(fn);
      CAPTURE(claim.description);
      SolverVerdict v = solve(c.script(claim.id), z3());
      REQUIRE(v.kind != VerdictKind::Unknown);
      CHECK((v.kind == VerdictKind::Sat) == enumerate_violation(c.run.program, claim.id));
    }
  }
}

TEST_CASE("hard instance times out") {
  // Factor a product of two 31-bit primes over 64-bit vectors.
  SmtScript s;
  s.logic = "QF_BV";
  s.text =
      "(set-option :produce-models true)\n(set-logic QF_BV)\n"
      "(declare-fun p () (_ BitVec 64))\n(declare-fun q () (_ BitVec 64))\n"
      "(assert (bvult p #x00000000ffffffff))\n(assert (bvult q #x00000000ffffffff))\n"
      "(assert (bvugt p #x0000000000000001))\n(assert (bvugt q #x0000000000000001))\n"
      "(assert (= (bvmul p q) (_ bv4611685975477714963 64)))\n(check-sat)\n(get-model)\n";
  SolverVerdict v = solve(s, z3(0.001));
  CHECK(v.kind == VerdictKind::Unknown);
  CHECK(v.reason == "timeout");
}

TEST_CASE("model numerals") {
  SolverVerdict v = parse_solver_output(
      "sat\n(\n  (define-fun |a#1| () (_ BitVec 8)\n    #xff)\n"
      "  (define-fun |b#2| () (_ BitVec 8) #b00000011)\n"
      "  (define-fun c#1 () (_ BitVec 16) (_ bv300 16))\n"
      "  (define-fun |f#1| () Bool true)\n)\n");
  REQUIRE(v.kind == VerdictKind::Sat);
  CHECK(v.model.at("a#1") == 255);
  CHECK(v.model.at("b#2") == 3);
  CHECK(v.model.at("c#1") == 300);
  CHECK(v.model.at("f#1") == 1);
  CHECK(parse_solver_output("unsat\n").kind == VerdictKind::Unsat);
  CHECK(parse_solver_output("unknown\n").kind == VerdictKind::Unknown);
  try {
    parse_solver_output("sat\n((define-fun |a#1| () (_ BitVec 8)\n");
    FAIL("accepted truncated model");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ModelParse);
  }
}

TEST_CASE("missing solver executable") {
  Case c = prepared(load_fixture("arith"), "falseAssert");
  SolverConfig cfg{"/nonexistent/solver-binary", {}, 5};
  try {
    solve(c.script(claim_of(c.run.program, ClaimCategory::UserAssert)), cfg);
    FAIL("spawned");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SolverSpawn);
  }
}
