#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sasaki {

enum class ErrorCode {
  NonPositiveInput,
  WeightsNotCoprime,
  WeightsUnordered,
  AdmissibilityGcdFailure,
  DegenerateRay,
  NotQuasiRegular,
  NotQuasiMonotone,
  NotPositiveKahlerEinstein,
  InvalidAdmissibleData,
  UnsupportedDimension,
  BaseMismatch,
  InvalidPQ,
  UnknownBase,
  PreconditionViolated,
  ParseError,
  // Mathematical failures: the input was well formed but the computation
  // cannot proceed.
  SingularSystem,
  DegenerateFamily,
  NoPositiveRoot,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::WeightsNotCoprime: return "WeightsNotCoprime";
    case ErrorCode::WeightsUnordered: return "WeightsUnordered";
    case ErrorCode::AdmissibilityGcdFailure: return "AdmissibilityGcdFailure";
    case ErrorCode::DegenerateRay: return "DegenerateRay";
    case ErrorCode::NotQuasiRegular: return "NotQuasiRegular";
    case ErrorCode::NotQuasiMonotone: return "NotQuasiMonotone";
    case ErrorCode::NotPositiveKahlerEinstein: return "NotPositiveKahlerEinstein";
    case ErrorCode::InvalidAdmissibleData: return "InvalidAdmissibleData";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::InvalidPQ: return "InvalidPQ";
    case ErrorCode::UnknownBase: return "UnknownBase";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::DegenerateFamily: return "DegenerateFamily";
    case ErrorCode::NoPositiveRoot: return "NoPositiveRoot";
  }
  return "Unknown";
}

/// True for errors raised by a computation on valid input (CLI exit code 3);
/// everything else is a validation error (exit code 2).
constexpr bool is_mathematical(ErrorCode code) {
  return code == ErrorCode::SingularSystem || code == ErrorCode::DegenerateFamily ||
         code == ErrorCode::NoPositiveRoot;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace sasaki
