#include "acman/errors.hpp"

namespace acman {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::IncompleteTable: return "IncompleteTable";
    case ErrorCode::MissingChernNumber: return "MissingChernNumber";
    case ErrorCode::IntegralityViolation: return "IntegralityViolation";
    case ErrorCode::OpenManifold: return "OpenManifold";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotCharacteristic: return "NotCharacteristic";
    case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::OffSphere: return "OffSphere";
    case ErrorCode::BadRotation: return "BadRotation";
    case ErrorCode::DegenerateK: return "DegenerateK";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace acman
