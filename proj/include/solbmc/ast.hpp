#ifndef SOLBMC_AST_HPP
#define SOLBMC_AST_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "solbmc/source_span.hpp"

namespace solbmc {

enum class NodeKind {
  SourceUnit,
  ContractDefinition,
  FunctionDefinition,
  VariableDeclaration,
  VariableDeclarationStatement,
  Block,
  ForStatement,
  WhileStatement,
  IfStatement,
  ExpressionStatement,
  Return,
  Break,
  Continue,
  BinaryOperation,
  UnaryOperation,
  Assignment,
  FunctionCall,
  Identifier,
  MemberAccess,
  IndexAccess,
  Literal,
  TupleExpression,
  Conditional,
  ElementaryTypeName,
  ElementaryTypeNameExpression,
  ArrayTypeName,
  ParameterList,
  PragmaDirective,
  Unsupported,
};

std::string_view to_string(NodeKind kind);

/// One decoded solc AST node. Node-valued JSON fields become child slots,
/// everything else stays in `attributes`.
class AstNode {
 public:
  struct Slot {
    std::string field;
    bool is_list = false;
    std::vector<std::shared_ptr<const AstNode>> nodes;  // may hold nullptr
  };

  std::int64_t id = 0;
  NodeKind kind = NodeKind::Unsupported;
  std::string node_type;  // original nodeType string
  SourceSpan span;
  nlohmann::json attributes = nlohmann::json::object();
  /// Slots in Solidity grammar order for the kinds that have one (e.g. a
  /// ForStatement yields initialisation, condition, increment, body).
  std::vector<Slot> slots;

  /// First node stored under `field`, or nullptr when absent or null.
  const AstNode* child(std::string_view field) const;
  std::vector<const AstNode*> children(std::string_view field) const;
  /// All non-null children, slot by slot.
  std::vector<const AstNode*> ordered_children() const;

  std::string name() const { return attr_string("name"); }
  std::string attr_string(std::string_view key) const;
  std::optional<std::int64_t> attr_int(std::string_view key) const;
  bool attr_bool(std::string_view key) const;
};

/// A decoded compact-JSON source unit plus the optional original text used
/// to turn byte offsets into line numbers.
struct AstRoot {
  std::shared_ptr<const AstNode> source_unit;
  std::string file_name;
  std::optional<std::string> raw_text;

  /// Attaches the original source; every span must fit inside it.
  void attach_source(std::string text);
  std::optional<std::size_t> line_of(const SourceSpan& span) const;
  /// "file:line" when the source is known, otherwise "file@offset".
  std::string location_text(const SourceSpan& span) const;
  std::vector<const AstNode*> contracts() const;
};

AstRoot load_ast(std::string_view json_text, std::string file_name);
/// Reads an AST file and, if given, the original source next to it.
AstRoot load_ast_file(const std::string& ast_path,
                      const std::optional<std::string>& source_path = std::nullopt);

SourceSpan source_span(std::string_view src_attr);

/// The unique FunctionDefinition called `name` in any contract of the unit.
const AstNode& find_function(const AstRoot& root, std::string_view name);

/// The contract that contains `function`.
const AstNode& enclosing_contract(const AstRoot& root, const AstNode& function);

/// Pre-order visit of every node reachable from `node`.
template <typename Visitor>
void visit_preorder(const AstNode& node, Visitor&& visitor) {
  visitor(node);
  for (const AstNode* c : node.ordered_children()) visit_preorder(*c, visitor);
}

}  // namespace solbmc

#endif  // SOLBMC_AST_HPP
