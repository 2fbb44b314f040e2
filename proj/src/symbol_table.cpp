#include "solbmc/symbol_table.hpp"

#include "solbmc/error.hpp"

namespace solbmc {

const Symbol& SymbolTable::add(Symbol symbol, bool scoped) {
  if (index_.count(symbol.unique_id))
    throw Error(ErrorKind::Redeclaration, "symbol '" + symbol.unique_id + "' already registered",
                symbol.location);
  if (scoped) {
    auto& scope = scopes_.back();
    if (!symbol.display_name.empty() && scope.count(symbol.display_name))
      throw Error(ErrorKind::Redeclaration,
                  "'" + symbol.display_name + "' is already declared in this scope",
                  symbol.location);
    if (!symbol.display_name.empty()) scope[symbol.display_name] = symbol.unique_id;
  }
  std::size_t slot = symbols_.size();
  index_[symbol.unique_id] = slot;
  if (symbol.ast_id) by_ast_id_[*symbol.ast_id] = slot;
  symbols_.push_back(std::move(symbol));
  return symbols_.back();
}

const Symbol* SymbolTable::find(const std::string& unique_id) const {
  auto it = index_.find(unique_id);
  return it == index_.end() ? nullptr : &symbols_[it->second];
}

Symbol* SymbolTable::find_mutable(const std::string& unique_id) {
  auto it = index_.find(unique_id);
  return it == index_.end() ? nullptr : &symbols_[it->second];
}

void SymbolTable::bind(const std::string& display_name, const std::string& unique_id,
                       const SourceSpan& location) {
  auto& scope = scopes_.back();
  if (scope.count(display_name))
    throw Error(ErrorKind::Redeclaration, "'" + display_name + "' is already declared in this scope",
                location);
  scope[display_name] = unique_id;
}

const Symbol& SymbolTable::at(const std::string& unique_id) const {
  if (const Symbol* s = find(unique_id)) return *s;
  throw Error(ErrorKind::NotFound, "unknown symbol '" + unique_id + "'");
}

const Symbol* SymbolTable::find_by_ast_id(std::int64_t ast_id) const {
  auto it = by_ast_id_.find(ast_id);
  return it == by_ast_id_.end() ? nullptr : &symbols_[it->second];
}

const Symbol* SymbolTable::lookup(const std::string& display_name) const {
  for (auto scope = scopes_.rbegin(); scope != scopes_.rend(); ++scope) {
    auto it = scope->find(display_name);
    if (it != scope->end()) return find(it->second);
  }
  return nullptr;
}

void SymbolTable::push_scope() { scopes_.emplace_back(); }

void SymbolTable::pop_scope() {
  if (scopes_.size() > 1) scopes_.pop_back();
}

std::string SymbolTable::fresh_id(const std::string& base) const {
  if (!contains(base)) return base;
  for (int n = 2;; ++n) {
    std::string candidate = base + "!" + std::to_string(n);
    if (!contains(candidate)) return candidate;
  }
}

}  // namespace solbmc
