#include "sclon/error.hpp"

namespace sclon {

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ContractViolation: return "E_CONTRACT";
    case ErrorCode::InvalidConfig: return "E_CONFIG";
    case ErrorCode::SingularSystem: return "E_SINGULAR";
    case ErrorCode::NonFinite: return "E_NONFINITE";
    case ErrorCode::NumericalFailure: return "E_NUMERICAL";
    case ErrorCode::Divergence: return "E_DIVERGENCE";
    case ErrorCode::IoError: return "E_IO";
    case ErrorCode::FormatError: return "E_FORMAT";
    case ErrorCode::ConfigMismatch: return "E_CONFIG_HASH";
    case ErrorCode::ToleranceExceeded: return "E_TOLERANCE";
  }
  return "E_UNKNOWN";
}

int exit_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ContractViolation: return 3;
    case ErrorCode::InvalidConfig: return 4;
    case ErrorCode::SingularSystem: return 5;
    case ErrorCode::NonFinite: return 6;
    case ErrorCode::NumericalFailure: return 7;
    case ErrorCode::Divergence: return 8;
    case ErrorCode::IoError: return 9;
    case ErrorCode::FormatError: return 10;
    case ErrorCode::ConfigMismatch: return 11;
    case ErrorCode::ToleranceExceeded: return 12;
  }
  return 1;
}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace sclon
