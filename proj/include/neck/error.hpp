#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace neck {

enum class ErrorKind {
    NonPositiveWarp,
    DegenerateGrid,
    BoundaryProximity,
    SingularMetric,
    RadiusOutOfRange,
    QuadratureNonConvergence,
    UnsupportedPiece,
    RadiusExceedsModel,
    ParameterOutOfRange,
    InfeasibleBudget,
    CodimensionTooSmall,
    IngredientFloorTooLow,
    FloorCheckFailed,
    MissingIngredient,
    SchemaViolation,
    IoFailure,
    InterfaceMismatch,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

class GeometryError : public std::runtime_error {
public:
    GeometryError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw GeometryError(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

}  // namespace neck
