#pragma once

#include <stdexcept>
#include <string>

namespace sipkit {

enum class ErrorCode {
  InvalidArgument,
  NonIrreducible,
  AllZero,
  WindowTooSmall,
  QuadratureNotConverged,
  RejectionStall,
  SingularSystem,
  ConfigError,
  ToleranceError,
  IoError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::InvalidArgument, what);
}

}  // namespace sipkit
