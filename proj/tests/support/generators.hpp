#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "neck/warped.hpp"

namespace neck::testing {

/// Smooth positive function c0 + sum_k a_k sin(k w s + p_k) with values in [0.2, 2].
struct RandomWarp {
    double c0 = 1.0;
    std::array<double, 3> amp{};
    std::array<double, 3> phase{};
    double omega = 2.0;

    explicit RandomWarp(std::mt19937_64& rng, double fundamental = 2.0) : omega(fundamental) {
        std::uniform_real_distribution<double> base(0.6, 1.4), ph(0.0, 2.0 * std::numbers::pi);
        c0 = base(rng);
        // Total amplitude below min(c0 - 0.2, 2 - c0) keeps values inside [0.2, 2].
        const double room = std::min(c0 - 0.2, 2.0 - c0);
        std::uniform_real_distribution<double> w(0.05, 1.0);
        double total = 0.0;
        for (auto& a : amp) total += (a = w(rng));
        for (auto& a : amp) a *= 0.9 * room / total;
        for (auto& p : phase) p = ph(rng);
    }

    double operator()(double s) const {
        double v = c0;
        for (int k = 0; k < 3; ++k) v += amp[k] * std::sin((k + 1) * omega * s + phase[k]);
        return v;
    }
    Jet jet(double s) const {
        Jet j{c0, 0.0, 0.0};
        for (int k = 0; k < 3; ++k) {
            const double w = (k + 1) * omega, x = w * s + phase[k];
            j.f += amp[k] * std::sin(x);
            j.d1 += amp[k] * w * std::cos(x);
            j.d2 -= amp[k] * w * w * std::sin(x);
        }
        return j;
    }
};

/// Sampled-only profile: derivatives come from the not-a-knot spline.
inline WarpProfile sampled_profile(const RandomWarp& f, int m, double length = 1.0,
                                   std::size_t nodes = 2049) {
    auto s = Profile1D::uniform_grid(length, nodes);
    std::vector<double> v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) v[i] = f(s[i]);
    return WarpProfile{Profile1D::from_samples(std::move(s), v), m};
}

inline WarpProfile round_sphere_profile(int n, double radius = 1.0, std::size_t nodes = 1025) {
    auto s = Profile1D::uniform_grid(std::numbers::pi * radius, nodes);
    return WarpProfile{Profile1D::from_function(std::move(s),
                                                [radius](double x) {
                                                    const double u = x / radius;
                                                    return Jet{radius * std::sin(u), std::cos(u),
                                                               -std::sin(u) / radius};
                                                })
                           .with_end_third_derivatives(-1.0 / (radius * radius), 1.0 / (radius * radius)),
                       n - 1};
}

}  // namespace neck::testing
