#include "ahls/error.hpp"

namespace ahls {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::DivergentIntegral: return "DivergentIntegral";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::DegenerateBody: return "DegenerateBody";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::AssumptionViolated: return "AssumptionViolated";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace ahls
