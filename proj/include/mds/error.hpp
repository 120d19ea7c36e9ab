#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mds {

enum class ErrorCode {
  DegenerateTriangle,
  NonCanonicalShape,
  InvalidInterval,
  DegenerateFan,
  NotAWps,
  InvalidField,
  FieldMismatch,
  ZeroPolynomial,
  BadPrime,
  NonUnimodular,
  CertificateFails,
  WrongShape,
  InvalidArgument,
  NoValidJ,
  PostVerificationFailed,
  ValidationFailed,
  PremiseFailed,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::NonCanonicalShape: return "NonCanonicalShape";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::DegenerateFan: return "DegenerateFan";
    case ErrorCode::NotAWps: return "NotAWps";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::NonUnimodular: return "NonUnimodular";
    case ErrorCode::CertificateFails: return "CertificateFails";
    case ErrorCode::WrongShape: return "WrongShape";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoValidJ: return "NoValidJ";
    case ErrorCode::PostVerificationFailed: return "PostVerificationFailed";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::PremiseFailed: return "PremiseFailed";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mds
