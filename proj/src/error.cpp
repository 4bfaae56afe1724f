#include "ibg/error.hpp"

namespace ibg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::ColorConflict: return "ColorConflict";
    case ErrorCode::InvalidOrdering: return "InvalidOrdering";
    case ErrorCode::ModelValidationFailed: return "ModelValidationFailed";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::UnknownPair: return "UnknownPair";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotTotal: return "NotTotal";
    case ErrorCode::NotTransitive: return "NotTransitive";
  }
  return "Unknown";
}

}  // namespace ibg
