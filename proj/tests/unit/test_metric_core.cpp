#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "generators.hpp"
#include "neck/ambient.hpp"
#include "neck/error.hpp"
#include "neck/oracle.hpp"
#include "neck/warped.hpp"

using namespace neck;
using neck::testing::RandomWarp;

namespace {

double max_abs_dev(const std::vector<double>& v, double target) {
    double d = 0.0;
    for (double x : v) d = std::max(d, std::abs(x - target));
    return d;
}

WarpProfile constant_profile(double rho, double length, int m) {
    return WarpProfile{Profile1D::constant(Profile1D::uniform_grid(length, 257), rho), m};
}

}  // namespace

TEST_CASE("oracle: constant curvature and flat charts") {
    Eigen::VectorXd x(3);
    x << 0.3, -0.2, 0.4;
    CHECK(finite_difference_scalar(round_sphere_chart(3), x, 1e-3) == doctest::Approx(6.0).epsilon(1e-4 / 6));
    CHECK(std::abs(finite_difference_scalar(euclidean_chart(3), Eigen::VectorXd::Zero(3), 1e-3)) <= 1e-6);
    Eigen::VectorXd y = Eigen::VectorXd::Constant(4, 0.1);
    CHECK(finite_difference_scalar(round_sphere_chart(4, 0.5), y, 1e-3) ==
          doctest::Approx(48.0).epsilon(1e-5));
}

TEST_CASE("oracle: error paths") {
    Eigen::VectorXd edge(3);
    edge << 1.9995, 0.0, 0.0;
    CHECK_THROWS_AS(finite_difference_scalar(round_sphere_chart(3), edge, 1e-3), GeometryError);
    CoordinateChartMetric bad = euclidean_chart(2);
    bad.metric_fn = [](const Eigen::VectorXd& p) {
        Eigen::MatrixXd g = Eigen::MatrixXd::Identity(2, 2);
        g(1, 1) = p(0);  // degenerate at x = 0
        return g;
    };
    try {
        finite_difference_scalar(bad, Eigen::VectorXd::Zero(2), 1e-3);
        FAIL("expected SingularMetric");
    } catch (const GeometryError& e) {
        CHECK(e.kind() == ErrorKind::SingularMetric);
    }
    CHECK(chart_is_riemannian(round_sphere_chart(3), 20, 7));
    CHECK_FALSE(chart_is_riemannian(bad, 50, 7));
}

TEST_CASE("round spheres: R = n(n-1) at every node including poles") {
    for (int n = 3; n <= 7; ++n) {
        const auto prof = neck::testing::round_sphere_profile(n);
        CHECK(max_abs_dev(scalar_curvature_warped(prof), n * (n - 1.0)) <= 1e-9);
    }
    // sin on [0, pi - 0.2]: unit round S^3 with one pole
    auto s = Profile1D::uniform_grid(std::numbers::pi - 0.2, 1000);
    WarpProfile cap{Profile1D::from_function(s, [](double x) { return Jet{std::sin(x), std::cos(x), -std::sin(x)}; })
                        .with_end_third_derivatives(-1.0, std::nullopt),
                    2};
    CHECK(max_abs_dev(scalar_curvature_warped(cap), 6.0) <= 1e-9);
}

TEST_CASE("product case: cylinder R x S^2(1/2)") {
    CHECK(max_abs_dev(scalar_curvature_warped(constant_profile(0.5, 1.0, 2)), 8.0) <= 1e-9);
}

TEST_CASE("warped profile validation") {
    auto s = Profile1D::uniform_grid(1.0, 32);
    std::vector<double> v(s.size(), 1.0);
    v[10] = -0.1;
    WarpProfile bad{Profile1D::from_samples(s, v), 2};
    try {
        scalar_curvature_warped(bad);
        FAIL("expected NonPositiveWarp");
    } catch (const GeometryError& e) {
        CHECK(e.kind() == ErrorKind::NonPositiveWarp);
    }
    // vanishing end without |phi'| = 1 is not a smooth pole
    WarpProfile cone{Profile1D::from_function(s, [](double x) { return Jet{0.5 * x, 0.5, 0.0}; }), 2};
    CHECK_THROWS_AS(scalar_curvature_warped(cone), GeometryError);
}

TEST_CASE("doubly warped: product of rounds and p = 0 reduction") {
    auto s = Profile1D::uniform_grid(1.0, 257);
    DoublyWarpProfile d{Profile1D::constant(s, 1.0), Profile1D::constant(s, 0.3), 1, 3};
    CHECK(max_abs_dev(scalar_curvature_doubly_warped(d), 2.0 / 0.09) <= 1e-9);

    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
        RandomWarp f(rng);
        const auto w = neck::testing::sampled_profile(f, 3);
        const auto single = scalar_curvature_warped(w);
        const auto dbl = scalar_curvature_doubly_warped(as_doubly(w));
        for (std::size_t i = 0; i < single.size(); ++i) CHECK(std::abs(single[i] - dbl[i]) <= 1e-12);
    }
}

TEST_CASE("oracle equivalence on random warped and doubly warped profiles") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> coord(-0.5, 0.5);
    for (int m : {2, 4}) {
        for (int t = 0; t < 5; ++t) {
            RandomWarp f(rng);
            const auto w = neck::testing::sampled_profile(f, m);
            const auto closed = scalar_curvature_warped(w);
            const auto chart = warped_chart(w);
            for (std::size_t i = 100; i < w.phi.size() - 100; i += 371) {
                Eigen::VectorXd x(m + 1);
                x(0) = w.phi.nodes()[i];
                for (int k = 1; k <= m; ++k) x(k) = coord(rng);
                const double fd = finite_difference_scalar(chart, x, 1e-3);
                CHECK(std::abs(fd - closed[i]) / std::max(1.0, std::abs(closed[i])) <= 1e-4);
            }
        }
    }
    // a constant, b random, p = 2: cross and base terms
    RandomWarp f(rng);
    const auto w = neck::testing::sampled_profile(f, 2);
    DoublyWarpProfile d{Profile1D::constant(w.phi.nodes(), 0.7), w.phi, 2, 3};
    const auto closed = scalar_curvature_doubly_warped(d);
    const auto chart = doubly_warped_chart(d);
    for (std::size_t i = 200; i < 1900; i += 500) {
        Eigen::VectorXd x = Eigen::VectorXd::Constant(5, 0.2);
        x(0) = d.b.nodes()[i];
        const double fd = finite_difference_scalar(chart, x, 1e-3);
        CHECK(std::abs(fd - closed[i]) / std::max(1.0, std::abs(closed[i])) <= 1e-4);
    }
    // both factors varying, p = 1 (angle coordinate)
    RandomWarp g(rng);
    const auto wa = neck::testing::sampled_profile(g, 1);
    DoublyWarpProfile e{wa.phi, w.phi, 1, 4};
    const auto ce = scalar_curvature_doubly_warped(e);
    const auto chart_e = doubly_warped_chart(e);
    for (std::size_t i = 300; i < 1800; i += 400) {
        Eigen::VectorXd x = Eigen::VectorXd::Constant(5, -0.1);
        x(0) = e.b.nodes()[i];
        const double fd = finite_difference_scalar(chart_e, x, 1e-3);
        CHECK(std::abs(fd - ce[i]) / std::max(1.0, std::abs(ce[i])) <= 1e-4);
    }
}

TEST_CASE("oracle in the other direction: analytic chart vs spline closed form") {
    std::mt19937_64 rng(99);
    RandomWarp f(rng);
    const auto w = neck::testing::sampled_profile(f, 3);
    const auto closed = scalar_curvature_warped(w);
    const auto chart = analytic_warped_chart(3, 0.0, 1.0, [f](double s) { return f(s); });
    for (std::size_t i = 150; i < 1900; i += 250) {
        Eigen::VectorXd x = Eigen::VectorXd::Constant(4, 0.05);
        x(0) = w.phi.nodes()[i];
        const double fd = finite_difference_scalar(chart, x, 1e-3);
        CHECK(std::abs(fd - closed[i]) / std::max(1.0, std::abs(closed[i])) <= 1e-4);
    }
}

TEST_CASE("scaling law: (s, phi) -> (c s, c phi) scales R by 1/c^2") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> cdist(0.3, 3.0);
    for (int t = 0; t < 10; ++t) {
        RandomWarp f(rng);
        const auto w = neck::testing::sampled_profile(f, 3);
        const double c = cdist(rng);
        const WarpProfile ws{w.phi.scaled(c, c), 3};
        const auto r0 = scalar_curvature_warped(w);
        const auto r1 = scalar_curvature_warped(ws);
        for (std::size_t i = 0; i < r0.size(); i += 97) {
            CHECK(std::abs(r1[i] * c * c - r0[i]) <= 1e-8 * std::max(1.0, std::abs(r0[i])));
        }
    }
}

TEST_CASE("volume: hemisphere, cylinder, monotonicity") {
    auto s = Profile1D::uniform_grid(std::numbers::pi / 2, 2048);
    WarpProfile hemi{Profile1D::from_function(s, [](double x) { return Jet{std::sin(x), std::cos(x), -std::sin(x)}; }), 2};
    const double pi2 = std::numbers::pi * std::numbers::pi;
    CHECK(std::abs(volume(hemi).value - pi2) <= 1e-6 * pi2);

    const double rho = 0.37, len = 2.5;
    const double cyl = len * 4.0 * std::numbers::pi * rho * rho;
    CHECK(std::abs(volume(constant_profile(rho, len, 2)).value - cyl) <= 1e-9 * cyl);

    std::mt19937_64 rng(3);
    for (int t = 0; t < 5; ++t) {
        RandomWarp f(rng);
        RandomWarp g = f;
        g.c0 += 0.05;
        const auto v0 = volume(neck::testing::sampled_profile(f, 2)).value;
        const auto v1 = volume(neck::testing::sampled_profile(g, 2)).value;
        CHECK(v1 > v0);
    }
    CHECK(unit_sphere_volume(3) == doctest::Approx(2.0 * pi2));
    CHECK(unit_sphere_volume(2) == doctest::Approx(4.0 * std::numbers::pi));
}

TEST_CASE("geodesic sphere data") {
    const auto flat = geodesic_sphere_data(AmbientModel::euclidean(3), 0.1);
    for (double l : flat.principal_curvatures) CHECK(l == -10.0);
    CHECK(flat.deviation_c0 == 0.0);

    const auto sph = geodesic_sphere_data(AmbientModel::round_sphere(3), 0.1);
    REQUIRE(sph.principal_curvatures.size() == 2);
    const double lam = sph.principal_curvatures[0];
    CHECK(lam == doctest::Approx(-1.0 / std::tan(0.1)));
    CHECK(std::abs(lam + 10.0) <= 0.05);
    CHECK(sph.deviation_c0 <= 0.01);
    CHECK(sph.deviation_c2 <= 0.01);

    const auto half = geodesic_sphere_data(AmbientModel::round_sphere(3), 0.05);
    const double ratio = std::abs(lam + 10.0) / std::abs(half.principal_curvatures[0] + 20.0);
    CHECK(ratio >= 1.8);
    CHECK(ratio <= 2.2);

    CHECK_THROWS_AS(geodesic_sphere_data(AmbientModel::round_sphere(3), 1.6), GeometryError);
    CHECK_THROWS_AS(geodesic_sphere_data(AmbientModel::round_sphere(3), 0.0), GeometryError);
}
