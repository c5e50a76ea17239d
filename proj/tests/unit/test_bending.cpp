#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "neck/bending.hpp"
#include "neck/error.hpp"
#include "neck/oracle.hpp"

using namespace neck;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

CurveDesignParams sphere_params(double kappa, double delta, int q) {
    CurveDesignParams P;
    P.kappa = kappa;
    P.delta = delta;
    P.p = 0;
    P.q = q;
    P.n = q;
    P.ambient = AmbientModel::round_sphere(q);
    return P;
}

double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

}  // namespace

TEST_CASE("vertical segment is an annulus of the round sphere") {
    const double r0 = 0.3;
    auto s = Profile1D::uniform_grid(0.2, 400);
    auto c = BendingCurve::from_angle(s, [](double) { return std::pair{0.0, 0.0}; }, r0);
    c.validate();
    for (int n = 3; n <= 6; ++n) {
        const auto model = AmbientModel::round_sphere(n);
        auto sigma = std::get<WarpProfile>(induce_sigma_metric(c, model));
        CHECK(sigma.m == n - 1);
        const auto R = scalar_curvature_warped(sigma);
        for (std::size_t i = 0; i < c.size(); ++i) {
            CHECK(std::abs(sigma.phi.jet(i).f - std::sin(r0 - c.s[i])) <= 1e-12);
            CHECK(std::abs(R[i] - n * (n - 1)) <= 1e-9);
            CHECK(std::abs(gauss_scalar_at(model, c.theta[i], c.k[i], c.r[i]) - model.kappa()) <= 1e-12);
        }
        const auto lam = principal_curvatures_sigma(c, model, 0.1);
        REQUIRE(lam.size() == static_cast<std::size_t>(n));
        for (double l : lam) CHECK(l == 0.0);
    }
}

TEST_CASE("horizontal segment gives a cylinder") {
    const double eta = 0.02;
    auto s = Profile1D::uniform_grid(0.1, 64);
    auto c = BendingCurve::from_angle(s, [](double) { return std::pair{kHalfPi, 0.0}; }, eta);
    for (int q = 3; q <= 5; ++q) {
        const auto model = AmbientModel::euclidean(q);
        const auto R = scalar_curvature(induce_sigma_metric(c, model));
        const double expect = (q - 1) * (q - 2) / (eta * eta);
        for (std::size_t i = 0; i < c.size(); ++i) {
            CHECK(std::abs(c.r[i] - eta) <= 1e-15);
            CHECK(std::abs(R[i] - expect) <= 1e-9 * expect);
            CHECK(gauss_scalar_reconstruction(c, model, c.s[i]) == doctest::Approx(expect).epsilon(1e-12));
        }
        const auto lam = principal_curvatures_sigma(c, model, 0.05);
        CHECK(lam[0] == 0.0);
        for (int i = 1; i < q; ++i) CHECK(lam[i] == doctest::Approx(-1.0 / eta).epsilon(1e-12));
    }
    // product model adds the base term p(p-1)/rho^2
    const auto prod = AmbientModel::product(2, 3, 0.5, 0.0);
    const auto Rp = scalar_curvature(induce_sigma_metric(c, prod));
    CHECK(Rp[10] == doctest::Approx(2.0 / (eta * eta) + 2.0 / 0.25).epsilon(1e-10));
}

TEST_CASE("designed curve: kappa 6, delta 0.1, q 3") {
    const auto P = sphere_params(6.0, 0.1, 3);
    const auto d = design_bending_curve(P);
    const auto& c = d.curve;
    c.validate();
    const auto sigma = std::get<WarpProfile>(induce_sigma_metric(c, P.ambient));
    const auto R = scalar_curvature_warped(sigma);
    CHECK(min_of(R) > 5.9);
    CHECK(d.min_R > 5.9);
    CHECK(d.min_R_gauss > 5.9);
    CHECK(c.length() <= d.achieved_C * 0.1 + 1e-15);
    CHECK(c.eta() < 0.1);
    CHECK(c.r0() == doctest::Approx(0.198));

    // exact vertical start and horizontal end, theta monotone, r nonincreasing
    CHECK(c.theta.front() == 0.0);
    CHECK(c.theta.back() == kHalfPi);
    CHECK(c.vertical_end > 0.0);
    CHECK(c.horizontal_start < c.length());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c.s[i] <= c.vertical_end) {
            CHECK(c.theta[i] == 0.0);
            CHECK(std::abs(sigma.phi.jet(i).f - std::sin(c.r0() - c.s[i])) <= 1e-12);
        }
        if (c.s[i] >= c.horizontal_start) CHECK(c.theta[i] == kHalfPi);
        if (i > 0) {
            CHECK(c.theta[i] >= c.theta[i - 1]);
            CHECK(c.r[i] <= c.r[i - 1]);
        }
        CHECK(c.k[i] >= 0.0);
    }
}

TEST_CASE("designed curve: kappa 12, delta 0.05, q 4 has comparable C") {
    const auto d3 = design_bending_curve(sphere_params(6.0, 0.1, 3));
    const auto d4 = design_bending_curve(sphere_params(12.0, 0.05, 4));
    CHECK(d4.min_R > 12.0 - 0.05);
    CHECK(d4.curve.eta() < 0.05);
    CHECK(d4.achieved_C <= 4.0 * d3.achieved_C);
    CHECK(d3.achieved_C <= 4.0 * d4.achieved_C);
}

TEST_CASE("length constant is uniform as delta shrinks") {
    double prev = 0.0;
    for (double delta : {0.2, 0.1, 0.05, 0.025}) {
        const auto d = design_bending_curve(sphere_params(6.0, delta, 3));
        CHECK(d.min_R > 6.0 - delta);
        CHECK(d.curve.eta() < delta);
        if (prev > 0.0) CHECK(d.achieved_C <= 1.1 * prev);
        prev = d.achieved_C;
    }
}

TEST_CASE("Gauss reconstruction equals the closed form on random curves") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int checked = 0;
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        CurveDesignParams P;
        P.q = 3 + static_cast<int>(U(rng) * 3);
        P.delta = 0.03 + 0.17 * U(rng);
        const int kind = static_cast<int>(U(rng) * 3);
        if (kind == 0) {
            P.ambient = AmbientModel::round_sphere(P.q);
        } else {
            P.p = 1 + static_cast<int>(U(rng) * 2);
            P.ambient = AmbientModel::product(P.p, P.q, 0.5 + U(rng), kind == 1 ? 0.0 : 1.0);
        }
        P.n = P.p + P.q;
        P.kappa = P.ambient.kappa() - 0.5 * P.delta * U(rng);
        const auto d = design_bending_curve(P);
        const auto R = scalar_curvature(induce_sigma_metric(d.curve, P.ambient));
        const auto i = static_cast<std::size_t>(U(rng) * static_cast<double>(d.curve.size() - 1));
        const double g = gauss_scalar_reconstruction(d.curve, P.ambient, d.curve.s[i]);
        const double rel = std::abs(g - R[i]) / std::max(1.0, std::abs(R[i]));
        worst = std::max(worst, rel);
        CHECK(rel <= 1e-6);
        CHECK(d.min_R > P.kappa - P.delta);
        ++checked;
    }
    CHECK(checked == 50);
    MESSAGE("worst relative Gauss/closed-form gap " << worst);
}

TEST_CASE("Gauss reconstruction agrees with the finite-difference oracle") {
    const auto P = sphere_params(6.0, 0.2, 3);
    const auto d = design_bending_curve(P);
    const auto sigma = std::get<WarpProfile>(induce_sigma_metric(d.curve, P.ambient));
    const auto chart = warped_chart(sigma);
    std::mt19937_64 rng(5);
    int used = 0;
    for (std::size_t i = 0; i < d.curve.size() && used < 12; i += 7) {
        const auto& c = d.curve;
        if (c.s[i] < 0.01 || c.r[i] < 0.15 || c.theta[i] < 1e-3) continue;
        Eigen::VectorXd x(3);
        x << c.s[i], 0.2, -0.1;
        const double fd = finite_difference_scalar(chart, x, 1e-3);
        const double g = gauss_scalar_at(P.ambient, c.theta[i], c.k[i], c.r[i]);
        CHECK(std::abs(fd - g) / std::max(1.0, std::abs(g)) <= 1e-4);
        ++used;
    }
    CHECK(used >= 5);
}

TEST_CASE("degenerate target angle and error paths") {
    auto P = sphere_params(6.0, 0.1, 3);
    P.target_angle = 0.0;
    const auto d = design_bending_curve(P);
    for (double th : d.curve.theta) CHECK(th == 0.0);
    for (double R : scalar_curvature(induce_sigma_metric(d.curve, P.ambient))) CHECK(std::abs(R - 6.0) <= 1e-9);

    auto bad = sphere_params(6.2, 0.1, 3);  // floor above the model
    CHECK_THROWS_AS(design_bending_curve(bad), GeometryError);
    try {
        design_bending_curve(bad);
    } catch (const GeometryError& e) {
        CHECK(e.kind() == ErrorKind::InfeasibleBudget);
    }

    auto lowq = sphere_params(2.0, 0.1, 2);
    try {
        design_bending_curve(lowq);
        FAIL("q = 2 accepted");
    } catch (const GeometryError& e) {
        CHECK(e.kind() == ErrorKind::CodimensionTooSmall);
    }

    auto far = BendingCurve::from_angle(Profile1D::uniform_grid(0.1, 16), [](double) { return std::pair{0.0, 0.0}; },
                                        3.3);
    try {
        induce_sigma_metric(far, AmbientModel::round_sphere(3));
        FAIL("radius beyond pi accepted");
    } catch (const GeometryError& e) {
        CHECK(e.kind() == ErrorKind::RadiusExceedsModel);
    }
    try {
        principal_curvatures_sigma(d.curve, P.ambient, d.curve.length() + 1.0);
        FAIL("s outside the curve accepted");
    } catch (const GeometryError& e) {
        CHECK(e.kind() == ErrorKind::ParameterOutOfRange);
    }
}
