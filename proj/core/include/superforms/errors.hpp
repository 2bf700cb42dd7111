#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace superforms {

enum class ErrorCode {
  DivisionByZero,
  NotAMonomial,
  NoFormalRoot,
  UnassignedParameter,
  PoleAtPoint,
  NonRationalRoot,
  ParseError,
  TableMismatch,
  UnknownGenerator,
  NotEven,
  NotOdd,
  DegreeTooHigh,
  NonNilpotentExponentBody,
  ParityMismatch,
  NonInvertibleBody,
  HasKernel,
  SingularD,
  DimensionMismatch,
  Degenerate,
  OddDiagonalizationFailure,
  NotInSpo,
  KernelNotSupported,
  SingularKernel,
  UnboundedPolynomialDegree,
  MissingDifferential,
  NotInvariant,
  NotInvertibleOnOdd,
  NotClosed,
  ParameterizedPoint,
  InvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the engine. The CLI maps these to exit status 3,
// except ParseError which is a usage problem (exit 2).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace superforms
