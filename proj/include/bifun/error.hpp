#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bifun {

enum class ErrorCode {
  NotSymmetric,
  NotOrthonormal,
  NotConvex,
  NegativeCurvature,
  DimensionMismatch,
  PolarityMismatch,
  UnboundedBelow,
  UnboundedAbove,
  ImproperInput,
  InfeasibleObservation,
  Precondition,
  SyntaxError,
  TypeError,
  UnknownSuite,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::NegativeCurvature: return "NegativeCurvature";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::PolarityMismatch: return "PolarityMismatch";
    case ErrorCode::UnboundedBelow: return "UnboundedBelow";
    case ErrorCode::UnboundedAbove: return "UnboundedAbove";
    case ErrorCode::ImproperInput: return "ImproperInput";
    case ErrorCode::InfeasibleObservation: return "InfeasibleObservation";
    case ErrorCode::Precondition: return "Precondition";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::TypeError: return "TypeError";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message is prefixed with the code name so it reads well on its own.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Improper composites and infeasible observations are diagnostics about
  /// the mathematical object, not about how the library was called.
  bool is_improper() const noexcept {
    return code_ == ErrorCode::UnboundedBelow || code_ == ErrorCode::UnboundedAbove ||
           code_ == ErrorCode::ImproperInput || code_ == ErrorCode::InfeasibleObservation;
  }

 private:
  ErrorCode code_;
};

inline void require_dims(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::DimensionMismatch, what);
}

}  // namespace bifun
