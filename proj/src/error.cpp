#include "solbmc/error.hpp"

namespace solbmc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::Ambiguous: return "Ambiguous";
    case ErrorKind::UnsupportedConstruct: return "UnsupportedConstruct";
    case ErrorKind::Type: return "TypeError";
    case ErrorKind::Arity: return "ArityError";
    case ErrorKind::Redeclaration: return "Redeclaration";
    case ErrorKind::RecursionUnsupported: return "RecursionUnsupported";
    case ErrorKind::UnknownClaim: return "UnknownClaim";
    case ErrorKind::Encode: return "EncodeError";
    case ErrorKind::SolverSpawn: return "SolverSpawnError";
    case ErrorKind::ModelParse: return "ModelParseError";
    case ErrorKind::ReplayMismatch: return "ReplayMismatch";
    case ErrorKind::NondetValueMissing: return "NondetValueMissing";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::Usage: return "UsageError";
  }
  return "Error";
}

}  // namespace solbmc
