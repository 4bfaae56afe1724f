#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ibg {

enum class ErrorCode {
  MalformedInput,
  NotBipartite,
  ColorConflict,
  InvalidOrdering,
  ModelValidationFailed,
  InternalInconsistency,
  UnknownPair,
  TooLarge,
  PreconditionViolated,
  NotTotal,
  NotTransitive,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Input problems that map to CLI exit code 2.
inline bool is_input_error(ErrorCode c) {
  return c == ErrorCode::MalformedInput || c == ErrorCode::NotBipartite ||
         c == ErrorCode::ColorConflict || c == ErrorCode::TooLarge;
}

}  // namespace ibg
