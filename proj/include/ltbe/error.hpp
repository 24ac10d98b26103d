#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ltbe {

enum class ErrorCode {
  KindMismatch,
  CarrierMismatch,
  CombinatorialLimit,
  UndefinedSum,
  ParseError,
  TypeError,
  ValidationError,
  DegenerateStack,
  StackMismatch,
  MonotonicityViolation,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::CarrierMismatch: return "CarrierMismatch";
    case ErrorCode::CombinatorialLimit: return "CombinatorialLimit";
    case ErrorCode::UndefinedSum: return "UndefinedSum";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TypeError: return "TypeError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::DegenerateStack: return "DegenerateStack";
    case ErrorCode::StackMismatch: return "StackMismatch";
    case ErrorCode::MonotonicityViolation: return "MonotonicityViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message is prefixed with the code name so CLI diagnostics name it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ltbe
