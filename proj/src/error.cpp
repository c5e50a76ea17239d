#include "neck/error.hpp"

namespace neck {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NonPositiveWarp: return "NonPositiveWarp";
        case ErrorKind::DegenerateGrid: return "DegenerateGrid";
        case ErrorKind::BoundaryProximity: return "BoundaryProximity";
        case ErrorKind::SingularMetric: return "SingularMetric";
        case ErrorKind::RadiusOutOfRange: return "RadiusOutOfRange";
        case ErrorKind::QuadratureNonConvergence: return "QuadratureNonConvergence";
        case ErrorKind::UnsupportedPiece: return "UnsupportedPiece";
        case ErrorKind::RadiusExceedsModel: return "RadiusExceedsModel";
        case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
        case ErrorKind::InfeasibleBudget: return "InfeasibleBudget";
        case ErrorKind::CodimensionTooSmall: return "CodimensionTooSmall";
        case ErrorKind::IngredientFloorTooLow: return "IngredientFloorTooLow";
        case ErrorKind::FloorCheckFailed: return "FloorCheckFailed";
        case ErrorKind::MissingIngredient: return "MissingIngredient";
        case ErrorKind::SchemaViolation: return "SchemaViolation";
        case ErrorKind::IoFailure: return "IoFailure";
        case ErrorKind::InterfaceMismatch: return "InterfaceMismatch";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace neck
