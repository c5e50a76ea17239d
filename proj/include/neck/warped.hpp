#pragma once

#include <variant>
#include <vector>

#include "neck/profile.hpp"

namespace neck {

/// ds^2 + phi(s)^2 g_{S^m}.
struct WarpProfile {
    Profile1D phi;
    int m = 1;

    double length() const { return phi.length(); }
    /// Throws NonPositiveWarp / DegenerateGrid / InvalidArgument.
    void validate() const;
    bool pole_at_front() const;
    bool pole_at_back() const;
};

/// ds^2 + a(s)^2 g_{S^p} + b(s)^2 g_{S^{q-1}}, total dimension n = p + q.
/// p = 0 drops the a-factor entirely.
struct DoublyWarpProfile {
    Profile1D a;
    Profile1D b;
    int p = 0;
    int q = 3;

    int n() const { return p + q; }
    int fiber_dim() const { return q - 1; }
    double length() const { return b.length(); }
    void validate() const;
};

using PieceProfile = std::variant<WarpProfile, DoublyWarpProfile>;

/// Closed-form scalar curvature at every node. Pole endpoints (phi = 0 with
/// |phi'| = 1) use the smooth limit.
std::vector<double> scalar_curvature_warped(const WarpProfile& profile);
std::vector<double> scalar_curvature_doubly_warped(const DoublyWarpProfile& profile);
std::vector<double> scalar_curvature(const PieceProfile& profile);

/// Closed form at an arbitrary s from the interpolated jets (no pole handling).
double scalar_curvature_at(const PieceProfile& profile, double s);

/// Pointwise closed form away from poles.
double warped_scalar_at(int m, const Jet& phi);
double doubly_warped_scalar_at(int p, int m, const Jet& a, const Jet& b);

/// Volume of the unit round k-sphere.
double unit_sphere_volume(int k);

struct VolumeResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Coarea volume: integral over s of the fiber volume, Gauss-Kronrod per cell.
/// Throws QuadratureNonConvergence if the relative error estimate exceeds 1e-6.
VolumeResult volume(const WarpProfile& profile);
VolumeResult volume(const DoublyWarpProfile& profile);
VolumeResult volume(const PieceProfile& profile);

/// Diameter of the fiber over slice s (round sphere or product of two rounds).
double fiber_diameter(const PieceProfile& profile, double s);
double max_fiber_diameter(const PieceProfile& profile);

double length(const PieceProfile& profile);
int dimension(const PieceProfile& profile);
std::size_t node_count(const PieceProfile& profile);

/// Lift a singly warped profile to the doubly-warped form with p = 0.
DoublyWarpProfile as_doubly(const WarpProfile& profile);

PieceProfile reversed(const PieceProfile& profile);

}  // namespace neck
