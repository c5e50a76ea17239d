#pragma once

#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "neck/ambient.hpp"
#include "neck/warped.hpp"

namespace neck {

/// Unit-speed plane curve gamma(s) = (t(s), r(s)) in the totally geodesic slice
/// S = R x (ray), with t' = sin(theta), r' = -cos(theta), k = theta'.
/// theta = 0 runs straight down the r-axis, theta = pi/2 is parallel to t.
struct BendingCurve {
    std::vector<double> s;
    std::vector<double> theta;
    std::vector<double> k;
    std::vector<double> t;
    std::vector<double> r;

    // Bookkeeping filled by design_bending_curve (zero for hand-built curves).
    double vertical_end = 0.0;    // theta == 0 exactly on [0, vertical_end]
    double horizontal_start = 0.0;  // theta == target on [horizontal_start, L]

    std::size_t size() const { return s.size(); }
    double length() const { return s.back() - s.front(); }
    double r0() const { return r.front(); }
    double eta() const { return r.back(); }

    struct Point {
        double theta, k, t, r;
    };
    /// Exact at nodes; cubic Hermite in between.
    Point at(double x) const;

    /// Unit speed, r > 0, theta in [0, pi/2], k consistent with theta.
    void validate() const;

    /// Integrate t and r for a prescribed angle function (theta, k) on a grid.
    static BendingCurve from_angle(std::vector<double> s, const std::function<std::pair<double, double>(double)>& angle,
                                   double r0, double t0 = 0.0);
};

struct CurveDesignParams {
    double kappa = 6.0;
    double delta = 0.1;
    int p = 0;
    int q = 3;
    int n = 3;
    AmbientModel ambient = AmbientModel::round_sphere(3);
    /// Reject curves longer than max_length_factor * delta (<= 0 disables).
    double max_length_factor = 0.0;

    double target_angle = std::numbers::pi / 2;
    /// Tube radius scale: gamma starts at r0 = 0.99 * 2 * tube_delta. When <= 0
    /// the budget delta doubles as the tube scale.
    double tube_delta = 0.0;
    double budget_fraction = 0.75;  // share of the R-slack the bend may spend
    double fiber_fraction = 1.0;    // share of the sin^2 fiber term it may spend
    double angle_floor = 1e-4;     // smooths the 1/sin(theta) allowance near 0
    double terminal_scale = 0.05;   // angle scale of the final slow-down
    double vertical_fraction = 0.02;   // of r0
    double ramp_fraction = 0.05;       // of r0
    double horizontal_fraction = 0.02; // of r0
    double density = 2048.0;        // nodes per unit length away from the axis
    double radial_resolution = 0.02;  // step <= this * r near the axis
    int max_iterations = 6;
};

struct CurveDesign {
    BendingCurve curve;
    double achieved_C = 0.0;      // length / tube delta
    double min_R = 0.0;           // closed form on the induced profile
    double min_R_gauss = 0.0;     // Gauss-equation reconstruction
    double floor = 0.0;           // kappa - delta
    int iterations = 0;
    double budget_fraction = 0.0; // value that verified
};

/// Induced metric on Sigma: ds^2 + sn(r)^2 g_{S^{q-1}} (p = 0) or
/// ds^2 + rho_p^2 g_{S^p} + sn(r)^2 g_{S^{q-1}}. Throws RadiusExceedsModel.
PieceProfile induce_sigma_metric(const BendingCurve& curve, const AmbientModel& ambient);

/// All n principal curvatures of Sigma at s: k, then q-1 fiber values
/// -(cn/sn) sin(theta), then p base values (0 in the product model).
std::vector<double> principal_curvatures_sigma(const BendingCurve& curve, const AmbientModel& ambient, double s);

/// R of Sigma from ambient sectional curvatures plus lambda_i lambda_j.
double gauss_scalar_reconstruction(const BendingCurve& curve, const AmbientModel& ambient, double s);
double gauss_scalar_at(const AmbientModel& ambient, double theta, double k, double r);

/// Largest k at (theta, r) keeping R(Sigma) >= R(model) - slack.
double curvature_allowance(const AmbientModel& ambient, double theta, double r, double slack);

/// Vertical start, bend, horizontal end with verified min R > kappa - delta.
/// Throws InfeasibleBudget when no attempt certifies.
CurveDesign design_bending_curve(const CurveDesignParams& params);

}  // namespace neck
