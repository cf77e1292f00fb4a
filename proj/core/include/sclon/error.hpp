#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sclon {

/// Failure categories. Each maps to a stable machine-readable name and a CLI
/// exit status.
enum class ErrorCode {
  ContractViolation,
  InvalidConfig,
  SingularSystem,
  NonFinite,
  NumericalFailure,
  Divergence,
  IoError,
  FormatError,
  ConfigMismatch,
  ToleranceExceeded,
};

std::string_view code_name(ErrorCode code) noexcept;
int exit_status(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, std::string_view message) {
  if (!condition) fail(ErrorCode::ContractViolation, std::string(message));
}

}  // namespace sclon
