#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dfred {

// Stable error codes; the CLI prints these verbatim.
enum class ErrorCode {
  kXgcdOfZeros,
  kZeroInput,
  kInconsistentSystem,
  kContractViolated,
  kContractNonUnique,
  kNotABasis,
  kUnsupportedField,
  kValuationUncertain,
  kTerminationBound,
  kPrecondition,
  kParseError,
  kUnknownSymbol,
  kInternal,
};

constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kXgcdOfZeros: return "xgcd-of-zeros";
    case ErrorCode::kZeroInput: return "zero-input";
    case ErrorCode::kInconsistentSystem: return "inconsistent-system";
    case ErrorCode::kContractViolated: return "reduction-contract-violated";
    case ErrorCode::kContractNonUnique: return "reduction-contract-violated:non-unique";
    case ErrorCode::kNotABasis: return "not-a-basis";
    case ErrorCode::kUnsupportedField: return "unsupported-constant-field";
    case ErrorCode::kValuationUncertain: return "valuation-uncertain";
    case ErrorCode::kTerminationBound: return "termination-bound-exceeded";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kParseError: return "syntax-error";
    case ErrorCode::kUnknownSymbol: return "unknown-symbol";
    case ErrorCode::kInternal: return "internal-error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace dfred
