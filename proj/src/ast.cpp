#include "solbmc/ast.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "solbmc/error.hpp"

namespace solbmc {

using nlohmann::json;

namespace {

const std::map<std::string, NodeKind, std::less<>>& kind_table() {
  static const std::map<std::string, NodeKind, std::less<>> table = {
      {"SourceUnit", NodeKind::SourceUnit},
      {"ContractDefinition", NodeKind::ContractDefinition},
      {"FunctionDefinition", NodeKind::FunctionDefinition},
      {"VariableDeclaration", NodeKind::VariableDeclaration},
      {"VariableDeclarationStatement", NodeKind::VariableDeclarationStatement},
      {"Block", NodeKind::Block},
      {"UncheckedBlock", NodeKind::Block},
      {"ForStatement", NodeKind::ForStatement},
      {"WhileStatement", NodeKind::WhileStatement},
      {"IfStatement", NodeKind::IfStatement},
      {"ExpressionStatement", NodeKind::ExpressionStatement},
      {"Return", NodeKind::Return},
      {"Break", NodeKind::Break},
      {"Continue", NodeKind::Continue},
      {"BinaryOperation", NodeKind::BinaryOperation},
      {"UnaryOperation", NodeKind::UnaryOperation},
      {"Assignment", NodeKind::Assignment},
      {"FunctionCall", NodeKind::FunctionCall},
      {"Identifier", NodeKind::Identifier},
      {"MemberAccess", NodeKind::MemberAccess},
      {"IndexAccess", NodeKind::IndexAccess},
      {"Literal", NodeKind::Literal},
      {"TupleExpression", NodeKind::TupleExpression},
      {"Conditional", NodeKind::Conditional},
      {"ElementaryTypeName", NodeKind::ElementaryTypeName},
      {"ElementaryTypeNameExpression", NodeKind::ElementaryTypeNameExpression},
      {"ArrayTypeName", NodeKind::ArrayTypeName},
      {"ParameterList", NodeKind::ParameterList},
      {"PragmaDirective", NodeKind::PragmaDirective},
  };
  return table;
}

// Child fields visited in grammar production order. Fields not listed
// follow in JSON key order.
const std::map<std::string, std::vector<std::string>, std::less<>>& slot_order() {
  static const std::map<std::string, std::vector<std::string>, std::less<>> table = {
      {"ForStatement", {"initializationExpression", "condition", "loopExpression", "body"}},
      {"WhileStatement", {"condition", "body"}},
      {"IfStatement", {"condition", "trueBody", "falseBody"}},
      {"BinaryOperation", {"leftExpression", "rightExpression"}},
      {"Assignment", {"leftHandSide", "rightHandSide"}},
      {"FunctionCall", {"expression", "arguments"}},
      {"IndexAccess", {"baseExpression", "indexExpression"}},
      {"VariableDeclarationStatement", {"declarations", "initialValue"}},
      {"FunctionDefinition", {"parameters", "returnParameters", "modifiers", "body"}},
      {"VariableDeclaration", {"typeName", "value"}},
      {"Conditional", {"condition", "trueExpression", "falseExpression"}},
  };
  return table;
}

bool is_node(const json& j) { return j.is_object() && j.contains("nodeType"); }

bool is_node_list(const json& j) {
  if (!j.is_array() || j.empty()) return false;
  bool any_node = false;
  for (const auto& e : j) {
    if (e.is_null()) continue;
    if (!is_node(e)) return false;
    any_node = true;
  }
  return any_node;
}

class Decoder {
 public:
  std::shared_ptr<const AstNode> decode(const json& j) {
    if (!j.contains("id") || !j["id"].is_number_integer())
      throw Error(ErrorKind::Schema, "AST node without integer 'id'");
    if (!j["nodeType"].is_string()) throw Error(ErrorKind::Schema, "AST node with non-string 'nodeType'");
    if (!j.contains("src") || !j["src"].is_string())
      throw Error(ErrorKind::Schema, "AST node " + std::to_string(j["id"].get<std::int64_t>()) +
                                         " without 'src'");

    auto node = std::make_shared<AstNode>();
    node->id = j["id"].get<std::int64_t>();
    if (!ids_.insert(node->id).second)
      throw Error(ErrorKind::Schema, "duplicate AST node id " + std::to_string(node->id));
    node->node_type = j["nodeType"].get<std::string>();
    node->span = source_span(j["src"].get<std::string>());
    auto k = kind_table().find(node->node_type);
    node->kind = k == kind_table().end() ? NodeKind::Unsupported : k->second;

    std::vector<std::string> fields;
    if (auto order = slot_order().find(node->node_type); order != slot_order().end())
      fields = order->second;
    for (const auto& [key, value] : j.items())
      if (std::find(fields.begin(), fields.end(), key) == fields.end()) fields.push_back(key);

    for (const auto& key : fields) {
      if (!j.contains(key)) continue;
      const json& value = j[key];
      if (is_node(value)) {
        node->slots.push_back({key, false, {decode(value)}});
      } else if (is_node_list(value)) {
        AstNode::Slot slot{key, true, {}};
        for (const auto& e : value) slot.nodes.push_back(e.is_null() ? nullptr : decode(e));
        node->slots.push_back(std::move(slot));
      } else if (key != "nodeType" && key != "id" && key != "src") {
        node->attributes[key] = value;
      }
    }
    return node;
  }

 private:
  std::unordered_set<std::int64_t> ids_;
};

void collect_functions(const AstNode& node, std::string_view name,
                       std::vector<const AstNode*>& out) {
  if (node.kind == NodeKind::FunctionDefinition && node.name() == name &&
      node.attr_string("kind") != "constructor") {
    out.push_back(&node);
    return;
  }
  if (node.kind == NodeKind::SourceUnit || node.kind == NodeKind::ContractDefinition)
    for (const AstNode* c : node.children("nodes")) collect_functions(*c, name, out);
}

}  // namespace

std::string_view to_string(NodeKind kind) {
  for (const auto& [name, k] : kind_table())
    if (k == kind && name != "UncheckedBlock") return name;
  return "Unsupported";
}

const AstNode* AstNode::child(std::string_view field) const {
  for (const auto& slot : slots)
    if (slot.field == field) return slot.nodes.empty() ? nullptr : slot.nodes.front().get();
  return nullptr;
}

std::vector<const AstNode*> AstNode::children(std::string_view field) const {
  std::vector<const AstNode*> out;
  for (const auto& slot : slots)
    if (slot.field == field)
      for (const auto& n : slot.nodes) out.push_back(n.get());
  return out;
}

std::vector<const AstNode*> AstNode::ordered_children() const {
  std::vector<const AstNode*> out;
  for (const auto& slot : slots)
    for (const auto& n : slot.nodes)
      if (n) out.push_back(n.get());
  return out;
}

std::string AstNode::attr_string(std::string_view key) const {
  auto it = attributes.find(key);
  if (it == attributes.end() || !it->is_string()) return {};
  return it->get<std::string>();
}

std::optional<std::int64_t> AstNode::attr_int(std::string_view key) const {
  auto it = attributes.find(key);
  if (it == attributes.end()) return std::nullopt;
  if (it->is_number_integer()) return it->get<std::int64_t>();
  if (it->is_number_unsigned()) return static_cast<std::int64_t>(it->get<std::uint64_t>());
  return std::nullopt;
}

bool AstNode::attr_bool(std::string_view key) const {
  auto it = attributes.find(key);
  return it != attributes.end() && it->is_boolean() && it->get<bool>();
}

SourceSpan source_span(std::string_view src_attr) {
  std::uint64_t fields[3] = {0, 0, 0};
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    std::size_t end = i < 2 ? src_attr.find(':', pos) : src_attr.size();
    if (end == std::string_view::npos || end == pos)
      throw Error(ErrorKind::Schema, "malformed src attribute '" + std::string(src_attr) + "'");
    auto [ptr, ec] = std::from_chars(src_attr.data() + pos, src_attr.data() + end, fields[i]);
    if (ec != std::errc() || ptr != src_attr.data() + end)
      throw Error(ErrorKind::Schema, "malformed src attribute '" + std::string(src_attr) + "'");
    pos = end + 1;
  }
  return {fields[0], fields[1], fields[2]};
}

AstRoot load_ast(std::string_view json_text, std::string file_name) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("malformed JSON AST: ") + e.what());
  }
  if (!is_node(j)) throw Error(ErrorKind::Schema, "AST root is not a node");
  Decoder decoder;
  AstRoot root;
  root.source_unit = decoder.decode(j);
  if (root.source_unit->kind != NodeKind::SourceUnit)
    throw Error(ErrorKind::Schema, "AST root is '" + root.source_unit->node_type +
                                       "', expected SourceUnit");
  root.file_name = std::move(file_name);
  return root;
}

namespace {
std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

AstRoot load_ast_file(const std::string& ast_path, const std::optional<std::string>& source_path) {
  std::string name = ast_path;
  if (source_path) name = *source_path;
  name = name.substr(name.find_last_of('/') + 1);
  AstRoot root = load_ast(read_file(ast_path), name);
  if (source_path) root.attach_source(read_file(*source_path));
  return root;
}

void AstRoot::attach_source(std::string text) {
  visit_preorder(*source_unit, [&](const AstNode& n) {
    if (n.span.offset + n.span.length > text.size())
      throw Error(ErrorKind::Schema,
                  "span " + to_string(n.span) + " exceeds source length " +
                      std::to_string(text.size()),
                  n.span);
  });
  raw_text = std::move(text);
}

std::optional<std::size_t> AstRoot::line_of(const SourceSpan& span) const {
  if (!raw_text || span.offset > raw_text->size()) return std::nullopt;
  return 1 + static_cast<std::size_t>(std::count(
                 raw_text->begin(), raw_text->begin() + static_cast<std::ptrdiff_t>(span.offset), '\n'));
}

std::string AstRoot::location_text(const SourceSpan& span) const {
  if (auto line = line_of(span)) return file_name + ":" + std::to_string(*line);
  return file_name + "@" + std::to_string(span.offset);
}

std::vector<const AstNode*> AstRoot::contracts() const {
  std::vector<const AstNode*> out;
  for (const AstNode* n : source_unit->children("nodes"))
    if (n && n->kind == NodeKind::ContractDefinition) out.push_back(n);
  return out;
}

const AstNode& find_function(const AstRoot& root, std::string_view name) {
  std::vector<const AstNode*> found;
  collect_functions(*root.source_unit, name, found);
  if (found.empty()) throw Error(ErrorKind::NotFound, "no function named '" + std::string(name) + "'");
  if (found.size() > 1)
    throw Error(ErrorKind::Ambiguous,
                "function name '" + std::string(name) + "' is overloaded (" +
                    std::to_string(found.size()) + " definitions)",
                found[1]->span);
  return *found.front();
}

const AstNode& enclosing_contract(const AstRoot& root, const AstNode& function) {
  for (const AstNode* c : root.contracts())
    for (const AstNode* member : c->children("nodes"))
      if (member == &function) return *c;
  throw Error(ErrorKind::NotFound, "function '" + function.name() + "' is not a contract member",
              function.span);
}

}  // namespace solbmc
