#include "neck/bending.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "neck/error.hpp"

namespace neck {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double smoothstep5(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * x * (x * (6.0 * x - 15.0) + 10.0);
}

// Cubic Hermite on one cell, value and derivative.
std::pair<double, double> hermite(double x0, double x1, double f0, double f1, double d0, double d1, double x) {
    const double h = x1 - x0;
    const double u = (x - x0) / h;
    const double u2 = u * u, u3 = u2 * u;
    const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u, h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
    const double f = h00 * f0 + h10 * h * d0 + h01 * f1 + h11 * h * d1;
    const double df = ((6 * u2 - 6 * u) * f0 + (3 * u2 - 4 * u + 1) * h * d0 + (-6 * u2 + 6 * u) * f1 +
                       (3 * u2 - 2 * u) * h * d1) /
                      h;
    return {f, df};
}

void check_radius(const AmbientModel& ambient, double r) {
    require(r > 0.0 && r < ambient.max_radius(), ErrorKind::RadiusExceedsModel,
            "curve radius " + std::to_string(r) + " outside (0, " + std::to_string(ambient.max_radius()) + ")");
}

}  // namespace

BendingCurve::Point BendingCurve::at(double x) const {
    require(!s.empty() && x >= s.front() && x <= s.back(), ErrorKind::ParameterOutOfRange,
            "s = " + std::to_string(x) + " outside the curve");
    auto it = std::upper_bound(s.begin(), s.end(), x);
    std::size_t i = it == s.begin() ? 0 : static_cast<std::size_t>(it - s.begin()) - 1;
    if (s[i] == x || i + 1 == s.size()) return {theta[i], k[i], t[i], r[i]};
    const std::size_t j = i + 1;
    const auto [th, kk] = hermite(s[i], s[j], theta[i], theta[j], k[i], k[j], x);
    const double tt = hermite(s[i], s[j], t[i], t[j], std::sin(theta[i]), std::sin(theta[j]), x).first;
    const double rr = hermite(s[i], s[j], r[i], r[j], -std::cos(theta[i]), -std::cos(theta[j]), x).first;
    return {th, kk, tt, rr};
}

void BendingCurve::validate() const {
    const std::size_t n = s.size();
    require(n >= 8 && theta.size() == n && k.size() == n && t.size() == n && r.size() == n,
            ErrorKind::DegenerateGrid, "curve needs >= 8 nodes with matching columns");
    for (std::size_t i = 0; i < n; ++i) {
        require(r[i] > 0.0, ErrorKind::NonPositiveWarp, "curve touches the axis");
        require(theta[i] >= -1e-15 && theta[i] <= std::numbers::pi / 2 + 1e-15, ErrorKind::InvalidArgument,
                "theta outside [0, pi/2]");
        if (i == 0) continue;
        const double ds = s[i] - s[i - 1];
        require(ds > 0.0, ErrorKind::DegenerateGrid, "curve nodes not increasing");
        // chord of a unit-speed arc turning by dtheta lies in [ds cos(dtheta/2), ds]
        const double chord = std::hypot(t[i] - t[i - 1], r[i] - r[i - 1]);
        const double dth = theta[i] - theta[i - 1];
        const double tol = 1e-10 * ds + 1e-15 * (std::abs(s[i]) + std::abs(t[i]) + std::abs(r[i]));
        require(chord <= ds + tol && chord >= ds * std::cos(0.5 * dth) - tol,
                ErrorKind::InvalidArgument, "curve is not unit speed near s = " + std::to_string(s[i]));
        // k monotone across a cell puts dtheta between ds min(k) and ds max(k)
        const double ktol = 1e-8 + 1e-3 * std::abs(dth);
        require(dth >= ds * std::min(k[i], k[i - 1]) - ktol && dth <= ds * std::max(k[i], k[i - 1]) + ktol,
                ErrorKind::InvalidArgument,
                "k inconsistent with theta near s = " + std::to_string(s[i]));
    }
}

BendingCurve BendingCurve::from_angle(std::vector<double> s,
                                      const std::function<std::pair<double, double>(double)>& angle, double r0,
                                      double t0) {
    using boost::math::quadrature::gauss;
    require(s.size() >= 8, ErrorKind::DegenerateGrid, "curve needs >= 8 nodes");
    BendingCurve c;
    const std::size_t n = s.size();
    c.theta.resize(n);
    c.k.resize(n);
    c.t.resize(n);
    c.r.resize(n);
    double tt = t0, rr = r0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            tt += gauss<double, 20>::integrate([&](double x) { return std::sin(angle(x).first); }, s[i - 1], s[i]);
            rr -= gauss<double, 20>::integrate([&](double x) { return std::cos(angle(x).first); }, s[i - 1], s[i]);
        }
        const auto [th, kk] = angle(s[i]);
        c.theta[i] = th;
        c.k[i] = kk;
        c.t[i] = tt;
        c.r[i] = rr;
    }
    c.s = std::move(s);
    return c;
}

PieceProfile induce_sigma_metric(const BendingCurve& curve, const AmbientModel& ambient) {
    const double K = ambient.curvature;
    std::vector<Jet> jets(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const double r = curve.r[i], th = curve.theta[i];
        check_radius(ambient, r);
        const double sn = ambient.sn(r), cn = ambient.cn(r);
        const double c = std::cos(th), sth = std::sin(th);
        // b = sn(r(s)), b' = cn r', b'' = -K sn r'^2 + cn r'', r'' = k sin(theta)
        jets[i] = Jet{sn, -cn * c, -K * sn * c * c + cn * curve.k[i] * sth};
    }
    auto b = Profile1D::from_jets(curve.s, std::move(jets));
    if (ambient.p == 0) {
        WarpProfile w{std::move(b), ambient.q - 1};
        w.validate();
        return w;
    }
    DoublyWarpProfile d{Profile1D::constant(curve.s, ambient.rho_p), std::move(b), ambient.p, ambient.q};
    d.validate();
    return d;
}

std::vector<double> principal_curvatures_sigma(const BendingCurve& curve, const AmbientModel& ambient, double s) {
    const auto pt = curve.at(s);
    check_radius(ambient, pt.r);
    std::vector<double> lam;
    lam.reserve(ambient.n());
    lam.push_back(pt.k);
    const double mu = -ambient.cn(pt.r) / ambient.sn(pt.r) * std::sin(pt.theta);
    for (int i = 0; i < ambient.q - 1; ++i) lam.push_back(mu);
    // S^p has constant radius along the slice, so its directions are not bent
    for (int i = 0; i < ambient.p; ++i) lam.push_back(0.0);
    return lam;
}

double gauss_scalar_at(const AmbientModel& ambient, double theta, double k, double r) {
    check_radius(ambient, r);
    const int p = ambient.p, m = ambient.q - 1;
    const double K = ambient.curvature;
    const double c = std::cos(theta);
    // Ambient sectional curvatures on tangent planes of Sigma, summed over
    // ordered pairs: (e1, fiber) sees K cos^2, fiber-fiber K, base-base 1/rho^2,
    // mixed base planes are flat in the product.
    double ambient_sum = 2.0 * m * K * c * c + m * (m - 1) * K;
    if (p > 1) ambient_sum += p * (p - 1) * ambient.base_sectional();
    // (sum lambda)^2 - sum lambda^2 with lambda = (k, mu x m, 0 x p)
    const double mu = -ambient.cn(r) / ambient.sn(r) * std::sin(theta);
    const double lam_sum = 2.0 * m * k * mu + m * (m - 1) * mu * mu;
    return ambient_sum + lam_sum;
}

double gauss_scalar_reconstruction(const BendingCurve& curve, const AmbientModel& ambient, double s) {
    const auto pt = curve.at(s);
    return gauss_scalar_at(ambient, pt.theta, pt.k, pt.r);
}

double curvature_allowance(const AmbientModel& ambient, double theta, double r, double slack) {
    const int m = ambient.q - 1;
    const double cot = ambient.cn(r) / ambient.sn(r);
    const double sth = std::sin(theta);
    if (cot <= 0.0 || sth <= 0.0) return kInf;
    // R(Sigma) - R(model) = sin^2 [m(m-1) cot^2 - 2mK] - 2m k cot sin
    const double fiber = m * (m - 1) * cot * cot - 2.0 * m * ambient.curvature;
    return (slack + sth * sth * fiber) / (2.0 * m * cot * sth);
}

namespace {

struct Control {
    const AmbientModel& ambient;
    double slack;      // R(model) - (kappa - delta)
    double bf, ff, sigma, uc, target;
    double ramp_start, ramp_width;

    double ramp(double s) const { return smoothstep5((s - ramp_start) / ramp_width); }

    // Bend rate before the terminal factor. Spends at most bf of the slack and
    // ff of the fiber term, so R(Sigma) - floor >= (1 - bf) slack.
    double raw(double theta, double r) const {
        const int m = ambient.q - 1;
        const double cot = ambient.cn(r) / ambient.sn(r);
        if (cot <= 0.0) return 0.0;
        const double sth = std::sin(theta);
        const double fiber = std::max(0.0, m * (m - 1) * cot * cot - 2.0 * m * ambient.curvature);
        return bf * slack / (2.0 * m * cot * std::hypot(sth, sigma)) + ff * sth * fiber / (2.0 * m * cot);
    }

    // State y = (v, r, t) with v = (target - theta)^(1/4); the terminal factor
    // v^3 / (v^4 + uc)^(3/4) lets theta reach target in finite s with k ~ (s* - s)^3.
    std::array<double, 3> rhs(double s, const std::array<double, 3>& y) const {
        const double v = std::max(y[0], 0.0);
        const double v4 = v * v * v * v;
        const double theta = target - v4;
        const double dv = -0.25 * ramp(s) * raw(theta, y[1]) / std::pow(v4 + uc, 0.75);
        return {dv, -std::cos(theta), std::sin(theta)};
    }

    double k_of(double s, double v, double r) const {
        v = std::max(v, 0.0);
        const double v4 = v * v * v * v;
        return ramp(s) * raw(target - v4, r) * v * v * v / std::pow(v4 + uc, 0.75);
    }
};

std::array<double, 3> rk4(const Control& c, double s, const std::array<double, 3>& y, double h) {
    auto add = [](const std::array<double, 3>& a, const std::array<double, 3>& b, double f) {
        return std::array<double, 3>{a[0] + f * b[0], a[1] + f * b[1], a[2] + f * b[2]};
    };
    const auto k1 = c.rhs(s, y);
    const auto k2 = c.rhs(s + 0.5 * h, add(y, k1, 0.5 * h));
    const auto k3 = c.rhs(s + 0.5 * h, add(y, k2, 0.5 * h));
    const auto k4 = c.rhs(s + h, add(y, k3, h));
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return out;
}

BendingCurve integrate_curve(const CurveDesignParams& P, double r0, double slack, double bf, double rr) {
    const double target = P.target_angle;
    const double hmax = 1.0 / P.density;
    const double lv = P.vertical_fraction * r0;
    const double lh = P.horizontal_fraction * r0;
    Control ctl{P.ambient, slack, bf, P.fiber_fraction, P.angle_floor, P.terminal_scale, target, lv,
                P.ramp_fraction * r0};

    BendingCurve c;
    auto push = [&c](double s, double th, double k, double t, double r) {
        c.s.push_back(s);
        c.theta.push_back(th);
        c.k.push_back(k);
        c.t.push_back(t);
        c.r.push_back(r);
    };

    // vertical segment: the ambient annulus itself
    const std::size_t nv = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(lv / hmax)));
    for (std::size_t i = 0; i < nv; ++i) {
        const double s = lv * static_cast<double>(i) / static_cast<double>(nv);
        push(s, 0.0, 0.0, 0.0, r0 - s);
    }
    c.vertical_end = lv;
    if (target <= 0.0) {
        push(lv, 0.0, 0.0, 0.0, r0 - lv);
        c.horizontal_start = lv;
        return c;
    }

    std::array<double, 3> y{std::pow(target, 0.25), r0 - lv, 0.0};
    double s = lv, h = hmax;
    push(s, 0.0, 0.0, 0.0, y[1]);
    const std::size_t max_steps = 5'000'000;
    while (true) {
        require(c.s.size() < max_steps, ErrorKind::InfeasibleBudget, "bend did not finish within the step limit");
        h = std::min({hmax, rr * y[1], 1.25 * h});
        // resolve the 1/sin(theta) allowance: theta moves by a small fraction of itself per step
        const double kc = ctl.k_of(s, y[0], y[1]);
        if (kc > 0.0) h = std::min(h, 0.05 * std::max(c.theta.back(), P.angle_floor) / kc);
        auto next = rk4(ctl, s, y, h);
        if (next[0] <= 0.0) {
            // land exactly on v = 0 by bisecting the step length
            double lo = 0.0, hi = h;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, s); ++it) {
                const double mid = 0.5 * (lo + hi);
                (rk4(ctl, s, y, mid)[0] > 0.0 ? lo : hi) = mid;
            }
            next = rk4(ctl, s, y, hi);
            s += hi;
            y = {0.0, next[1], next[2]};
            push(s, target, 0.0, y[2], y[1]);
            break;
        }
        require(next[1] > 0.0, ErrorKind::InfeasibleBudget, "bend reached the axis before finishing");
        s += h;
        y = next;
        const double v4 = y[0] * y[0] * y[0] * y[0];
        push(s, target - v4, ctl.k_of(s, y[0], y[1]), y[2], y[1]);
    }
    c.horizontal_start = s;

    // horizontal segment, steps relaxing geometrically back to hmax
    const double end = s + lh;
    while (s < end) {
        h = std::min(hmax, 1.25 * h);
        s = end - s < 1.5 * h ? end : s + h;
        const double dt = s - c.s.back();
        push(s, target, 0.0, c.t.back() + std::sin(target) * dt, c.r.back() - std::cos(target) * dt);
    }
    return c;
}

}  // namespace

CurveDesign design_bending_curve(const CurveDesignParams& P) {
    P.ambient.validate();
    require(P.delta > 0.0, ErrorKind::InvalidArgument, "delta must be positive");
    require(P.q >= 3, ErrorKind::CodimensionTooSmall, "codimension q must be >= 3");
    require(P.p == P.ambient.p && P.q == P.ambient.q && P.n == P.p + P.q, ErrorKind::InvalidArgument,
            "curve dimensions disagree with the ambient model");
    require(P.target_angle >= 0.0 && P.target_angle <= std::numbers::pi / 2, ErrorKind::InvalidArgument,
            "target angle must lie in [0, pi/2]");
    const double tube = P.tube_delta > 0.0 ? P.tube_delta : P.delta;
    const double r0 = 0.99 * 2.0 * tube;
    require(r0 < P.ambient.injectivity_bound(), ErrorKind::RadiusExceedsModel, "tube radius beyond the model");
    const double floor = P.kappa - P.delta;
    const double slack = P.ambient.kappa() - floor;
    require(slack > 0.0, ErrorKind::InfeasibleBudget, "kappa - delta is not below the model's scalar curvature");

    double bf = P.budget_fraction, rr = P.radial_resolution;
    std::string last = "no attempt";
    for (int it = 1; it <= P.max_iterations; ++it, bf *= 0.5, rr *= 0.5) {
        BendingCurve curve;
        try {
            curve = integrate_curve(P, r0, slack, bf, rr);
        } catch (const GeometryError& e) {
            last = e.what();
            continue;
        }
        const auto sigma = induce_sigma_metric(curve, P.ambient);
        const auto R = scalar_curvature(sigma);
        double min_R = kInf, min_G = kInf;
        for (std::size_t i = 0; i < curve.size(); ++i) {
            min_R = std::min(min_R, R[i]);
            min_G = std::min(min_G, gauss_scalar_at(P.ambient, curve.theta[i], curve.k[i], curve.r[i]));
            // cell midpoints through the interpolants, so the floor is not a node artifact
            if (i + 1 < curve.size()) {
                const double sm = 0.5 * (curve.s[i] + curve.s[i + 1]);
                min_R = std::min(min_R, scalar_curvature_at(sigma, sm));
                min_G = std::min(min_G, gauss_scalar_reconstruction(curve, P.ambient, sm));
            }
        }
        const double C = curve.length() / tube;
        const bool floor_ok = min_R > floor && min_G > floor;
        const bool length_ok = P.max_length_factor <= 0.0 || C <= P.max_length_factor;
        const bool eta_ok = curve.eta() < 0.5 * r0 || P.target_angle < std::numbers::pi / 2;
        if (floor_ok && length_ok && eta_ok) {
            return CurveDesign{std::move(curve), C, min_R, min_G, floor, it, bf};
        }
        last = "attempt " + std::to_string(it) + ": min R " + std::to_string(std::min(min_R, min_G)) + ", C " +
               std::to_string(C) + ", eta " + std::to_string(curve.eta());
    }
    fail(ErrorKind::InfeasibleBudget, "no certified bending curve (" + last + ")");
}

}  // namespace neck
