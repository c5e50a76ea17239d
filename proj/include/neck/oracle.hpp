#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "neck/warped.hpp"

namespace neck {

/// Black-box metric in one coordinate chart; the oracle input format.
struct CoordinateChartMetric {
    int dim = 0;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> metric_fn;
    Eigen::VectorXd box_lo;
    Eigen::VectorXd box_hi;
};

/// Scalar curvature by central differences of the metric components:
/// Christoffel symbols and their derivatives from first and second differences,
/// contracted through the Ricci tensor. O(h^2) truncation error.
/// Throws BoundaryProximity or SingularMetric.
double finite_difference_scalar(const CoordinateChartMetric& chart, const Eigen::VectorXd& point,
                                double h);

/// Checks symmetry and positive definiteness of the chart at `samples` random
/// interior points drawn with `seed`.
bool chart_is_riemannian(const CoordinateChartMetric& chart, int samples, unsigned seed);

// Stereographic and product charts used to cross-check the closed forms.
CoordinateChartMetric euclidean_chart(int n);
CoordinateChartMetric round_sphere_chart(int n, double radius = 1.0);
/// Coordinates (s, y_1..y_m): ds^2 + phi(s)^2 g_{S^m} with stereographic y.
CoordinateChartMetric warped_chart(const WarpProfile& profile);
/// Coordinates (s, x_1..x_p, y_1..y_{q-1}); p = 1 uses an angle coordinate.
CoordinateChartMetric doubly_warped_chart(const DoublyWarpProfile& profile);
/// Same chart shape for an analytic warp function (independent of any spline).
CoordinateChartMetric analytic_warped_chart(int m, double s_lo, double s_hi,
                                            std::function<double(double)> phi);

}  // namespace neck
