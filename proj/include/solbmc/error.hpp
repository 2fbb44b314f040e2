#ifndef SOLBMC_ERROR_HPP
#define SOLBMC_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "solbmc/source_span.hpp"

namespace solbmc {

enum class ErrorKind {
  Parse,
  Schema,
  NotFound,
  Ambiguous,
  UnsupportedConstruct,
  Type,
  Arity,
  Redeclaration,
  RecursionUnsupported,
  UnknownClaim,
  Encode,
  SolverSpawn,
  ModelParse,
  ReplayMismatch,
  NondetValueMissing,
  Io,
  Usage,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the pipeline surfaces as an Error carrying its kind and,
/// when the cause is a source construct, the span of that construct.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<SourceSpan> location = std::nullopt)
      : std::runtime_error(message), kind_(kind), location_(location) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<SourceSpan>& location() const noexcept { return location_; }

 private:
  ErrorKind kind_;
  std::optional<SourceSpan> location_;
};

}  // namespace solbmc

#endif  // SOLBMC_ERROR_HPP
