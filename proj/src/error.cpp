#include "treefloer/error.hpp"

namespace treefloer {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::ArcMultiplicity: return "ArcMultiplicity";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::EmptyDiagram: return "EmptyDiagram";
    case ErrorKind::InternalGeometry: return "InternalGeometry";
    case ErrorKind::WeightConflict: return "WeightConflict";
    case ErrorKind::NotGeneric: return "NotGeneric";
    case ErrorKind::NonGenericWeights: return "NonGenericWeights";
    case ErrorKind::InterleavingViolation: return "InterleavingViolation";
    case ErrorKind::NotSingleCircle: return "NotSingleCircle";
    case ErrorKind::DivideByZero: return "DivideByZero";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::CheckFailed: return "CheckFailed";
    }
    return "Unknown";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::MalformedInput:
    case ErrorKind::ArcMultiplicity:
    case ErrorKind::Disconnected:
    case ErrorKind::EmptyDiagram:
    case ErrorKind::WeightConflict:
        return 1;
    case ErrorKind::NotGeneric:
    case ErrorKind::NonGenericWeights:
        return 2;
    default:
        return 3;
    }
}

} // namespace treefloer
