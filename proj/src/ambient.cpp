#include "neck/ambient.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "neck/error.hpp"
#include "neck/profile.hpp"

namespace neck {

AmbientModel AmbientModel::euclidean(int n) {
    AmbientModel m;
    m.kind = Kind::EuclideanProduct;
    m.p = 0;
    m.q = n;
    m.curvature = 0.0;
    return m;
}

AmbientModel AmbientModel::round_sphere(int n, double radius) {
    AmbientModel m;
    m.kind = Kind::RoundSphereBall;
    m.p = 0;
    m.q = n;
    m.curvature = 1.0 / (radius * radius);
    return m;
}

AmbientModel AmbientModel::product(int p, int q, double rho_p, double fiber_radius) {
    AmbientModel m;
    m.kind = fiber_radius > 0.0 ? Kind::ProductOfRounds : Kind::EuclideanProduct;
    m.p = p;
    m.q = q;
    m.rho_p = rho_p;
    m.curvature = fiber_radius > 0.0 ? 1.0 / (fiber_radius * fiber_radius) : 0.0;
    return m;
}

double AmbientModel::base_sectional() const { return p > 1 ? 1.0 / (rho_p * rho_p) : 0.0; }

double AmbientModel::kappa() const {
    double k = q * (q - 1) * curvature;
    if (p > 1) k += p * (p - 1) / (rho_p * rho_p);
    return k;
}

double AmbientModel::sn(double r) const {
    if (curvature == 0.0) return r;
    const double s = std::sqrt(curvature);
    return std::sin(s * r) / s;
}

double AmbientModel::cn(double r) const {
    if (curvature == 0.0) return 1.0;
    return std::cos(std::sqrt(curvature) * r);
}

double AmbientModel::max_radius() const {
    if (curvature == 0.0) return std::numeric_limits<double>::infinity();
    return std::numbers::pi / std::sqrt(curvature);
}

double AmbientModel::injectivity_bound() const {
    if (curvature == 0.0) return std::numeric_limits<double>::infinity();
    return 0.5 * std::numbers::pi / std::sqrt(curvature);
}

std::string AmbientModel::kind_name() const {
    switch (kind) {
        case Kind::EuclideanProduct: return "EuclideanProduct";
        case Kind::RoundSphereBall: return "RoundSphereBall";
        case Kind::ProductOfRounds: return "ProductOfRounds";
    }
    return "?";
}

void AmbientModel::validate() const {
    require(p >= 0 && q >= 1, ErrorKind::InvalidArgument, "model dimensions must satisfy p >= 0, q >= 1");
    require(curvature >= 0.0, ErrorKind::InvalidArgument, "only flat or spherical fiber models are supported");
    require(p == 0 || rho_p > 0.0, ErrorKind::InvalidArgument, "rho_p must be positive");
}

GeodesicSphereData geodesic_sphere_data(const AmbientModel& model, double eps) {
    model.validate();
    require(eps > 0.0 && eps < model.injectivity_bound(), ErrorKind::RadiusOutOfRange,
            "eps must lie in (0, injectivity bound)");
    GeodesicSphereData out;
    const double lambda = -model.cn(eps) / model.sn(eps);
    out.principal_curvatures.assign(static_cast<std::size_t>(model.q - 1), lambda);

    // g_eps = sn(eps)^2 g_{S^{q-1}}, so g_rd - eps^-2 g_eps = c * g_rd with c constant.
    const double ratio = model.sn(eps) / eps;
    const double c = 1.0 - ratio * ratio;
    out.deviation_c0 = std::abs(c);

    // C^2 norm of the coefficient sampled along a meridian of the unit sphere.
    const auto grid = Profile1D::uniform_grid(std::numbers::pi, 64);
    std::vector<double> samples(grid.size(), c);
    const auto coeff = Profile1D::from_samples(grid, samples);
    double sup0 = 0.0, sup1 = 0.0, sup2 = 0.0;
    for (const auto& j : coeff.jets()) {
        sup0 = std::max(sup0, std::abs(j.f));
        sup1 = std::max(sup1, std::abs(j.d1));
        sup2 = std::max(sup2, std::abs(j.d2));
    }
    out.deviation_c2 = sup0 + sup1 + sup2;
    return out;
}

}  // namespace neck
