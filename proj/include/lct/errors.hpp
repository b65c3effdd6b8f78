#pragma once

#include <stdexcept>
#include <string>

namespace lct {

enum class ErrorKind {
  // precondition failures
  OddDimension,
  NotFree,
  BadParameter,
  SingularCoupling,
  NotAntisymmetric,
  NotSeparable,
  GridMismatch,
  SingularL,
  AliasRisk,
  MomentOrderTooHigh,
  DegenerateLine,
  NotInSpTheta,
  DegeneratePair,
  NotSPD,
  SupportViolation,
  NotNormalized,
  MeanNotCentered,
  // numerical failures
  ImaginaryResidual,
  HeavyTails,
  InsufficientDecay,
  // input/output
  ParseError,
  NonuniformGrid,
  IOError,
};

enum class ErrorCategory { Precondition, Numeric, Parse, IO };

constexpr const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OddDimension: return "OddDimension";
    case ErrorKind::NotFree: return "NotFree";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::SingularCoupling: return "SingularCoupling";
    case ErrorKind::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorKind::NotSeparable: return "NotSeparable";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::SingularL: return "SingularL";
    case ErrorKind::AliasRisk: return "AliasRisk";
    case ErrorKind::MomentOrderTooHigh: return "MomentOrderTooHigh";
    case ErrorKind::DegenerateLine: return "DegenerateLine";
    case ErrorKind::NotInSpTheta: return "NotInSpTheta";
    case ErrorKind::DegeneratePair: return "DegeneratePair";
    case ErrorKind::NotSPD: return "NotSPD";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::MeanNotCentered: return "MeanNotCentered";
    case ErrorKind::ImaginaryResidual: return "ImaginaryResidual";
    case ErrorKind::HeavyTails: return "HeavyTails";
    case ErrorKind::InsufficientDecay: return "InsufficientDecay";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NonuniformGrid: return "NonuniformGrid";
    case ErrorKind::IOError: return "IOError";
  }
  return "Unknown";
}

constexpr ErrorCategory category_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ImaginaryResidual:
    case ErrorKind::HeavyTails:
    case ErrorKind::InsufficientDecay:
      return ErrorCategory::Numeric;
    case ErrorKind::ParseError:
    case ErrorKind::NonuniformGrid:
      return ErrorCategory::Parse;
    case ErrorKind::IOError:
      return ErrorCategory::IO;
    default:
      return ErrorCategory::Precondition;
  }
}

/// Every failure raised by the library. The kind is stable and is what the
/// CLI maps onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_of(kind_); }

 private:
  ErrorKind kind_;
};

/// Raised when a chirp factor would be undersampled. Carries the smallest
/// zero-padding factor that satisfies the output condition, or 0 when only a
/// finer input grid can help.
class AliasRiskError : public Error {
 public:
  AliasRiskError(const std::string& what, int required_oversample, double input_refinement)
      : Error(ErrorKind::AliasRisk, what),
        required_oversample_(required_oversample),
        input_refinement_(input_refinement) {}

  int required_oversample() const noexcept { return required_oversample_; }
  double input_refinement() const noexcept { return input_refinement_; }

 private:
  int required_oversample_;
  double input_refinement_;
};

}  // namespace lct
