#include "superforms/errors.hpp"

namespace superforms {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero:
      return "DivisionByZero";
    case ErrorCode::NotAMonomial:
      return "NotAMonomial";
    case ErrorCode::NoFormalRoot:
      return "NoFormalRoot";
    case ErrorCode::UnassignedParameter:
      return "UnassignedParameter";
    case ErrorCode::PoleAtPoint:
      return "PoleAtPoint";
    case ErrorCode::NonRationalRoot:
      return "NonRationalRoot";
    case ErrorCode::ParseError:
      return "ParseError";
    case ErrorCode::TableMismatch:
      return "TableMismatch";
    case ErrorCode::UnknownGenerator:
      return "UnknownGenerator";
    case ErrorCode::NotEven:
      return "NotEven";
    case ErrorCode::NotOdd:
      return "NotOdd";
    case ErrorCode::DegreeTooHigh:
      return "DegreeTooHigh";
    case ErrorCode::NonNilpotentExponentBody:
      return "NonNilpotentExponentBody";
    case ErrorCode::ParityMismatch:
      return "ParityMismatch";
    case ErrorCode::NonInvertibleBody:
      return "NonInvertibleBody";
    case ErrorCode::HasKernel:
      return "HasKernel";
    case ErrorCode::SingularD:
      return "SingularD";
    case ErrorCode::DimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::Degenerate:
      return "Degenerate";
    case ErrorCode::OddDiagonalizationFailure:
      return "OddDiagonalizationFailure";
    case ErrorCode::NotInSpo:
      return "NotInSpo";
    case ErrorCode::KernelNotSupported:
      return "KernelNotSupported";
    case ErrorCode::SingularKernel:
      return "SingularKernel";
    case ErrorCode::UnboundedPolynomialDegree:
      return "UnboundedPolynomialDegree";
    case ErrorCode::MissingDifferential:
      return "MissingDifferential";
    case ErrorCode::NotInvariant:
      return "NotInvariant";
    case ErrorCode::NotInvertibleOnOdd:
      return "NotInvertibleOnOdd";
    case ErrorCode::NotClosed:
      return "NotClosed";
    case ErrorCode::ParameterizedPoint:
      return "ParameterizedPoint";
    case ErrorCode::InvalidArgument:
      return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace superforms
