#include <doctest.h>

#include <cmath>
#include <random>

#include "neck/error.hpp"
#include "neck/profile.hpp"

using namespace neck;

TEST_CASE("spline reproduces samples at nodes and cubics exactly") {
    auto s = Profile1D::uniform_grid(2.0, 33);
    std::vector<double> f(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) f[i] = 1.0 + s[i] - 0.5 * s[i] * s[i] + 0.25 * s[i] * s[i] * s[i];
    const auto p = Profile1D::from_samples(s, f);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(p.eval(s[i]).f == doctest::Approx(f[i]).epsilon(1e-15));
        // not-a-knot reproduces cubics, so derivatives are exact too
        CHECK(p.jet(i).d1 == doctest::Approx(1.0 - s[i] + 0.75 * s[i] * s[i]).epsilon(1e-10));
        CHECK(p.jet(i).d2 == doctest::Approx(-1.0 + 1.5 * s[i]).epsilon(1e-9));
    }
    const auto e = p.eval(0.731);
    CHECK(e.d3 == doctest::Approx(1.5).epsilon(1e-8));
}

TEST_CASE("nonuniform spline matches a smooth function") {
    std::vector<double> s;
    for (int i = 0; i <= 200; ++i) s.push_back(std::pow(i / 200.0, 1.5) * 3.0);
    std::vector<double> f;
    for (double x : s) f.push_back(std::exp(-x) * std::cos(x));
    const auto p = Profile1D::from_samples(s, f);
    for (double x : {0.3, 1.1, 2.71}) {
        CHECK(p.eval(x).f == doctest::Approx(std::exp(-x) * std::cos(x)).epsilon(1e-6));
    }
}

TEST_CASE("quintic interpolation with exact jets is C2 at nodes") {
    auto s = Profile1D::uniform_grid(1.0, 17);
    const auto p = Profile1D::from_function(s, [](double x) {
        return Jet{std::sin(x), std::cos(x), -std::sin(x)};
    });
    const double node = s[5], eps = 1e-9;
    const auto l = p.eval(node - eps), r = p.eval(node + eps);
    CHECK(l.d2 == doctest::Approx(r.d2).epsilon(1e-6));
    CHECK(p.eval(0.4321).f == doctest::Approx(std::sin(0.4321)).epsilon(1e-12));
}

TEST_CASE("reversal and scaling") {
    auto s = Profile1D::uniform_grid(1.0, 9);
    const auto p = Profile1D::from_function(s, [](double x) { return Jet{1 + x * x, 2 * x, 2}; });
    const auto r = p.reversed();
    CHECK(r.front().f == doctest::Approx(2.0));
    CHECK(r.front().d1 == doctest::Approx(-2.0));
    CHECK(r.back().d2 == doctest::Approx(2.0));
    const auto c = p.scaled(2.0, 3.0);
    CHECK(c.back_s() == doctest::Approx(2.0));
    CHECK(c.back().d1 == doctest::Approx(3.0));
    CHECK(c.back().d2 == doctest::Approx(1.5));
}

TEST_CASE("degenerate grids are rejected") {
    auto s = Profile1D::uniform_grid(1.0, 5);
    std::vector<double> f(5, 1.0);
    CHECK_THROWS_AS(Profile1D::from_samples(s, f), GeometryError);
    std::vector<double> bad{0, 1, 1, 2, 3, 4, 5, 6};
    std::vector<double> g(8, 1.0);
    CHECK_THROWS_AS(Profile1D::from_samples(bad, g), GeometryError);
}
