#include "biharm/error.hpp"

namespace biharm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownFunction: return "UnknownFunction";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::DegenerateInducedMetric: return "DegenerateInducedMetric";
    case ErrorCode::RankDeficientJacobian: return "RankDeficientJacobian";
    case ErrorCode::OffQuadric: return "OffQuadric";
    case ErrorCode::DegenerateNormalBundle: return "DegenerateNormalBundle";
    case ErrorCode::StencilOutsideDomain: return "StencilOutsideDomain";
    case ErrorCode::NotAHypersurface: return "NotAHypersurface";
    case ErrorCode::NotSpacelike: return "NotSpacelike";
    case ErrorCode::NoValidSamples: return "NoValidSamples";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::InvalidRadius: return "InvalidRadius";
    case ErrorCode::UnsupportedSignature: return "UnsupportedSignature";
    case ErrorCode::NotMinimalInput: return "NotMinimalInput";
    case ErrorCode::UnknownEntry: return "UnknownEntry";
    case ErrorCode::SpecFileError: return "SpecFileError";
  }
  return "Unknown";
}

}  // namespace biharm
