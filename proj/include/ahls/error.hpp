#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ahls {

enum class ErrorKind {
  NonConvergent,
  DivergentIntegral,
  NonFinite,
  ZeroVector,
  DegenerateBody,
  PreconditionFailed,
  AssumptionViolated,
  ConfigError,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool condition, const std::string& what) {
  if (!condition) throw Error(ErrorKind::PreconditionFailed, what);
}

}  // namespace ahls
