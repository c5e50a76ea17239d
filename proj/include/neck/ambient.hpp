#pragma once

#include <string>
#include <vector>

namespace neck {

/// Local model X = R x T with T = S^p(rho_p) x B^q, the ball taken in a space
/// form of constant curvature `curvature` (0 for Euclidean).
struct AmbientModel {
    enum class Kind { EuclideanProduct, RoundSphereBall, ProductOfRounds };

    Kind kind = Kind::RoundSphereBall;
    int p = 0;
    int q = 3;
    double rho_p = 1.0;      // radius of the S^p factor (ignored when p = 0)
    double curvature = 1.0;  // sectional curvature of the fiber space form

    static AmbientModel euclidean(int n);
    static AmbientModel round_sphere(int n, double radius = 1.0);
    /// S^p(rho_p) x (ball in S^q(fiber_radius)), or flat fiber if fiber_radius <= 0.
    static AmbientModel product(int p, int q, double rho_p, double fiber_radius = 1.0);

    int n() const { return p + q; }
    /// Exact scalar curvature of the model.
    double kappa() const;
    /// Model warp function of the fiber ball and its derivative.
    double sn(double r) const;
    double cn(double r) const;
    /// Geodesic balls around the core are embedded for r < max_radius().
    double max_radius() const;
    double injectivity_bound() const;
    /// Sectional curvature of a plane tangent to the S^p factor.
    double base_sectional() const;

    std::string kind_name() const;
    void validate() const;
};

struct GeodesicSphereData {
    std::vector<double> principal_curvatures;  // q - 1 values, outward radial normal
    double deviation_c0 = 0.0;                 // sup operator norm of g_rd - eps^-2 g_eps
    double deviation_c2 = 0.0;                 // C^2 norm of the same tensor coefficient
};

/// Principal curvatures of the geodesic sphere of radius eps in the fiber ball,
/// and the deviation of its rescaled induced metric from the unit round one.
GeodesicSphereData geodesic_sphere_data(const AmbientModel& model, double eps);

}  // namespace neck
