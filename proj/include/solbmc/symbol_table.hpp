#ifndef SOLBMC_SYMBOL_TABLE_HPP
#define SOLBMC_SYMBOL_TABLE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "solbmc/source_span.hpp"
#include "solbmc/types.hpp"

namespace solbmc {

enum class SymbolKind { StateVar, LocalVar, Param, Function, Intrinsic, Internal };

struct Symbol {
  std::string unique_id;  // e.g. "c:MyContract@x", "c:MyContract@func_sat::y"
  std::string display_name;
  SolType sol_type;
  SymbolKind kind = SymbolKind::LocalVar;
  SourceSpan location;
  bool is_state = false;
  std::optional<std::int64_t> ast_id;  // declaring AST node
  // Functions only.
  std::vector<std::string> params;
  std::optional<std::string> return_symbol;
};

/// Declarations keyed by unique id, in registration order, plus the lexical
/// scope stack used while converting function bodies.
class SymbolTable {
 public:
  /// Registers `symbol`. Redeclaring a display name inside the innermost
  /// scope is an error; shadowing an outer scope is not.
  const Symbol& add(Symbol symbol, bool scoped = true);
  const Symbol* find(const std::string& unique_id) const;
  Symbol* find_mutable(const std::string& unique_id);
  const Symbol& at(const std::string& unique_id) const;
  const Symbol* find_by_ast_id(std::int64_t ast_id) const;
  /// Innermost-scope-first lookup by display name.
  const Symbol* lookup(const std::string& display_name) const;
  bool contains(const std::string& unique_id) const { return index_.count(unique_id) != 0; }

  /// Makes an already registered symbol visible under `display_name` in the
  /// innermost scope.
  void bind(const std::string& display_name, const std::string& unique_id,
            const SourceSpan& location = {});
  void push_scope();
  void pop_scope();
  std::size_t scope_depth() const { return scopes_.size(); }

  /// A unique id derived from `base` that is not registered yet.
  std::string fresh_id(const std::string& base) const;

  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }

 private:
  std::vector<Symbol> symbols_;
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_map<std::int64_t, std::size_t> by_ast_id_;
  std::vector<std::map<std::string, std::string>> scopes_{1};
};

}  // namespace solbmc

#endif  // SOLBMC_SYMBOL_TABLE_HPP
