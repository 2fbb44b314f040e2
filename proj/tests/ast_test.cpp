#include "doctest.h"

#include <set>

#include "solbmc/ast.hpp"
#include "solbmc/bench.hpp"
#include "solbmc/error.hpp"
#include "test_support.hpp"

using namespace solbmc;
using namespace solbmc::test;

namespace {

std::size_t count_children(const AstNode& n, NodeKind kind) {
  std::size_t k = 0;
  for (const AstNode* c : n.ordered_children()) k += c->kind == kind;
  return k;
}

ErrorKind error_kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Usage;
}

}  // namespace

TEST_CASE("func_sat contract decodes into its declarations") {
  AstRoot root = load_bench("suite", "FUNC_SAT");
  auto contracts = root.contracts();
  REQUIRE(contracts.size() == 1);
  const AstNode& c = *contracts[0];
  CHECK(c.kind == NodeKind::ContractDefinition);
  CHECK(c.name() == "MyContract");
  CHECK(count_children(c, NodeKind::VariableDeclaration) == 2);
  CHECK(count_children(c, NodeKind::FunctionDefinition) == 3);
  std::vector<std::string> names;
  for (const AstNode* n : c.ordered_children()) names.push_back(n->name());
  CHECK(names == std::vector<std::string>{"x", "sum", "nondet", "__ESBMC_assume", "func_sat"});
}

TEST_CASE("pragma-only unit has no contracts") {
  AstRoot root = load_fixture("empty");
  CHECK(root.contracts().empty());
  CHECK(root.source_unit->kind == NodeKind::SourceUnit);
}

TEST_CASE("malformed json is a parse error") {
  CHECK(error_kind_of([] { load_ast("{not json", "bad.json"); }) == ErrorKind::Parse);
}

TEST_CASE("source span fields decode in order") {
  SourceSpan s = source_span("12:34:0");
  CHECK(s.offset == 12);
  CHECK(s.length == 34);
  CHECK(s.file_index == 0);
  CHECK_THROWS_AS(source_span("12:34"), Error);
  CHECK_THROWS_AS(source_span("a:b:c"), Error);
}

TEST_CASE("line numbers follow the attached source") {
  AstRoot root = load_bench("suite", "FUNC_SAT");
  const AstNode& f = find_function(root, "func_sat");
  REQUIRE(root.line_of(f.span));
  CHECK(*root.line_of(f.span) == 12);
  CHECK(root.location_text(f.span).find(":12") != std::string::npos);
}

TEST_CASE("find_function") {
  AstRoot sat = load_bench("suite", "FUNC_SAT");
  const AstNode& f = find_function(sat, "func_sat");
  CHECK(f.kind == NodeKind::FunctionDefinition);
  CHECK(f.name() == "func_sat");
  CHECK(enclosing_contract(sat, f).name() == "MyContract");
  CHECK(error_kind_of([&] { find_function(sat, "missing"); }) == ErrorKind::NotFound);

  AstRoot overloads = load_fixture("overload");
  CHECK(error_kind_of([&] { find_function(overloads, "f"); }) == ErrorKind::Ambiguous);
  CHECK(find_function(overloads, "g").name() == "g");
}

TEST_CASE("decoding is stable and node ids are unique over the corpus") {
  for (const char* suite : {"suite", "safe"}) {
    for (const BenchCase& c : load_suite(std::string(SOLBMC_BENCH_DIR) + "/" + suite)) {
      CAPTURE(c.id);
      std::string text = read_file((c.dir / "ast.json").string());
      AstRoot a = load_ast(text, "a");
      AstRoot b = load_ast(text, "b");
      std::vector<std::pair<std::int64_t, NodeKind>> ka, kb;
      std::set<std::int64_t> ids;
      bool unique = true;
      visit_preorder(*a.source_unit, [&](const AstNode& n) {
        ka.emplace_back(n.id, n.kind);
        unique = ids.insert(n.id).second && unique;
        CHECK_MESSAGE(n.kind != NodeKind::Unsupported, n.node_type);
      });
      visit_preorder(*b.source_unit, [&](const AstNode& n) { kb.emplace_back(n.id, n.kind); });
      CHECK(ka == kb);
      CHECK(unique);
    }
  }
}
