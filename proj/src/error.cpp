#include "ptri/error.hpp"

namespace ptri {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::PosetMismatch: return "PosetMismatch";
    case ErrorCode::NotADownset: return "NotADownset";
    case ErrorCode::IncompleteTable: return "IncompleteTable";
    case ErrorCode::ImageNotDownset: return "ImageNotDownset";
    case ErrorCode::NotInflationary: return "NotInflationary";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::NotMeetPreserving: return "NotMeetPreserving";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::NotASieve: return "NotASieve";
    case ErrorCode::MissingMaximal: return "MissingMaximal";
    case ErrorCode::StabilityFail: return "StabilityFail";
    case ErrorCode::TransitivityFail: return "TransitivityFail";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace ptri
