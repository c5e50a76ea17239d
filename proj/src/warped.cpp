#include "neck/warped.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "neck/error.hpp"

namespace neck {

namespace {

constexpr double kPoleSlopeTol = 1e-6;
constexpr double kQuadratureRelTol = 1e-6;

double max_abs(const Profile1D& f) {
    double out = 0.0;
    for (const auto& j : f.jets()) out = std::max(out, std::abs(j.f));
    return out;
}

bool is_pole(const Profile1D& f, bool back) {
    const Jet& j = back ? f.back() : f.front();
    return std::abs(j.f) <= 1e-13 * std::max(max_abs(f), 1e-300);
}

// Interior nodes strictly positive; a vanishing endpoint must close smoothly.
void validate_factor(const Profile1D& f, const char* name) {
    require(f.size() >= 8, ErrorKind::DegenerateGrid,
            std::string(name) + ": profile needs at least 8 nodes");
    require(f.length() > 0.0, ErrorKind::DegenerateGrid, std::string(name) + ": L must be positive");
    const auto& jets = f.jets();
    for (std::size_t i = 1; i + 1 < jets.size(); ++i) {
        require(jets[i].f > 0.0, ErrorKind::NonPositiveWarp,
                std::string(name) + " <= 0 at node " + std::to_string(i));
    }
    for (bool back : {false, true}) {
        const Jet& j = back ? f.back() : f.front();
        if (is_pole(f, back)) {
            const double expected = back ? -1.0 : 1.0;
            require(std::abs(j.d1 - expected) <= kPoleSlopeTol, ErrorKind::NonPositiveWarp,
                    std::string(name) + " vanishes at an end without closing smoothly (|f'| != 1)");
        } else {
            require(j.f > 0.0, ErrorKind::NonPositiveWarp, std::string(name) + " <= 0 at an endpoint");
        }
    }
}

// Limit of the closed form at a pole of the k-dimensional factor `x`; `y` is the
// other factor (dimension l), which must be even about the pole.
double pole_scalar(int k, int l, double x_d1, double x_d3, const Jet& y) {
    double r = -k * (k + 1) * x_d1 * x_d3;
    if (l > 0) {
        r += l * (l - 1) * (1.0 - y.d1 * y.d1) / (y.f * y.f) - 2.0 * l * y.d2 / y.f;
        r -= 2.0 * k * l * y.d2 / y.f;
    }
    return r;
}

double fiber_volume(int p, int m, double a, double b) {
    double v = unit_sphere_volume(m) * std::pow(b, m);
    if (p > 0) v *= unit_sphere_volume(p) * std::pow(a, p);
    return v;
}

template <class Integrand>
VolumeResult integrate_cells(const std::vector<double>& s, Integrand&& f) {
    using boost::math::quadrature::gauss_kronrod;
    VolumeResult out;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        double err = 0.0;
        out.value += gauss_kronrod<double, 15>::integrate(f, s[i], s[i + 1], 3, 1e-9, &err);
        out.error_estimate += err;
    }
    if (!(out.error_estimate <= kQuadratureRelTol * std::abs(out.value)) &&
        out.error_estimate > 1e-300) {
        fail(ErrorKind::QuadratureNonConvergence,
             "relative error estimate " + std::to_string(out.error_estimate / out.value));
    }
    return out;
}

}  // namespace

void WarpProfile::validate() const {
    require(m >= 1, ErrorKind::InvalidArgument, "fiber dimension m must be >= 1");
    validate_factor(phi, "phi");
}

bool WarpProfile::pole_at_front() const { return is_pole(phi, false); }
bool WarpProfile::pole_at_back() const { return is_pole(phi, true); }

void DoublyWarpProfile::validate() const {
    require(p >= 0, ErrorKind::InvalidArgument, "p must be >= 0");
    require(q >= 3, ErrorKind::CodimensionTooSmall, "q must be >= 3, got " + std::to_string(q));
    validate_factor(b, "b");
    if (p > 0) {
        validate_factor(a, "a");
        require(a.nodes() == b.nodes(), ErrorKind::InvalidArgument, "a and b must share a grid");
        for (bool back : {false, true}) {
            require(!(is_pole(a, back) && is_pole(b, back)), ErrorKind::NonPositiveWarp,
                    "both factors vanish at the same end");
        }
    }
}

double scalar_curvature_at(const PieceProfile& profile, double s) {
    auto jet = [s](const Profile1D& f) {
        const Eval e = f.eval(s);
        return Jet{e.f, e.d1, e.d2};
    };
    if (const auto* w = std::get_if<WarpProfile>(&profile)) return warped_scalar_at(w->m, jet(w->phi));
    const auto& d = std::get<DoublyWarpProfile>(profile);
    return doubly_warped_scalar_at(d.p, d.fiber_dim(), d.p > 0 ? jet(d.a) : Jet{}, jet(d.b));
}

double warped_scalar_at(int m, const Jet& phi) { return doubly_warped_scalar_at(0, m, Jet{}, phi); }

double doubly_warped_scalar_at(int p, int m, const Jet& a, const Jet& b) {
    double r = m * (m - 1) * (1.0 - b.d1 * b.d1) / (b.f * b.f) - 2.0 * m * b.d2 / b.f;
    if (p > 0) {
        r += p * (p - 1) * (1.0 - a.d1 * a.d1) / (a.f * a.f) - 2.0 * p * a.d2 / a.f;
        r -= 2.0 * p * m * a.d1 * b.d1 / (a.f * b.f);
    }
    return r;
}

std::vector<double> scalar_curvature_warped(const WarpProfile& profile) {
    profile.validate();
    const auto& jets = profile.phi.jets();
    std::vector<double> out(jets.size());
    for (std::size_t i = 0; i < jets.size(); ++i) out[i] = warped_scalar_at(profile.m, jets[i]);
    for (bool back : {false, true}) {
        if (!is_pole(profile.phi, back)) continue;
        const Jet& j = back ? profile.phi.back() : profile.phi.front();
        const double d3 = profile.phi.end_third_derivative(back);
        (back ? out.back() : out.front()) = pole_scalar(profile.m, 0, j.d1, d3, Jet{});
    }
    return out;
}

std::vector<double> scalar_curvature_doubly_warped(const DoublyWarpProfile& profile) {
    profile.validate();
    const int p = profile.p, m = profile.fiber_dim();
    const auto& bj = profile.b.jets();
    std::vector<double> out(bj.size());
    for (std::size_t i = 0; i < bj.size(); ++i) {
        out[i] = doubly_warped_scalar_at(p, m, p > 0 ? profile.a.jet(i) : Jet{}, bj[i]);
    }
    for (bool back : {false, true}) {
        const std::size_t idx = back ? bj.size() - 1 : 0;
        if (is_pole(profile.b, back)) {
            const Jet other = p > 0 ? profile.a.jet(idx) : Jet{};
            out[idx] = pole_scalar(m, p, bj[idx].d1, profile.b.end_third_derivative(back), other);
        } else if (p > 0 && is_pole(profile.a, back)) {
            const Jet& aj = profile.a.jet(idx);
            out[idx] = pole_scalar(p, m, aj.d1, profile.a.end_third_derivative(back), bj[idx]);
        }
    }
    return out;
}

std::vector<double> scalar_curvature(const PieceProfile& profile) {
    return std::visit(
        [](const auto& pr) -> std::vector<double> {
            if constexpr (std::is_same_v<std::decay_t<decltype(pr)>, WarpProfile>) {
                return scalar_curvature_warped(pr);
            } else {
                return scalar_curvature_doubly_warped(pr);
            }
        },
        profile);
}

double unit_sphere_volume(int k) {
    const double h = 0.5 * (k + 1);
    return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

VolumeResult volume(const WarpProfile& profile) {
    profile.validate();
    const int m = profile.m;
    const Profile1D& phi = profile.phi;
    return integrate_cells(phi.nodes(), [&](double s) { return fiber_volume(0, m, 0.0, phi.eval(s).f); });
}

VolumeResult volume(const DoublyWarpProfile& profile) {
    profile.validate();
    const int p = profile.p, m = profile.fiber_dim();
    return integrate_cells(profile.b.nodes(), [&](double s) {
        return fiber_volume(p, m, p > 0 ? profile.a.eval(s).f : 0.0, profile.b.eval(s).f);
    });
}

VolumeResult volume(const PieceProfile& profile) {
    return std::visit([](const auto& pr) { return volume(pr); }, profile);
}

double fiber_diameter(const PieceProfile& profile, double s) {
    if (const auto* w = std::get_if<WarpProfile>(&profile)) {
        return std::numbers::pi * std::abs(w->phi.eval(s).f);
    }
    const auto& d = std::get<DoublyWarpProfile>(profile);
    const double b = d.b.eval(s).f;
    const double a = d.p > 0 ? d.a.eval(s).f : 0.0;
    return std::numbers::pi * std::hypot(a, b);
}

double max_fiber_diameter(const PieceProfile& profile) {
    double out = 0.0;
    std::visit(
        [&](const auto& pr) {
            using T = std::decay_t<decltype(pr)>;
            if constexpr (std::is_same_v<T, WarpProfile>) {
                for (const auto& j : pr.phi.jets()) out = std::max(out, std::numbers::pi * std::abs(j.f));
            } else {
                for (std::size_t i = 0; i < pr.b.size(); ++i) {
                    const double a = pr.p > 0 ? pr.a.jet(i).f : 0.0;
                    out = std::max(out, std::numbers::pi * std::hypot(a, pr.b.jet(i).f));
                }
            }
        },
        profile);
    return out;
}

double length(const PieceProfile& profile) {
    return std::visit([](const auto& pr) { return pr.length(); }, profile);
}

int dimension(const PieceProfile& profile) {
    if (const auto* w = std::get_if<WarpProfile>(&profile)) return w->m + 1;
    return std::get<DoublyWarpProfile>(profile).n();
}

std::size_t node_count(const PieceProfile& profile) {
    if (const auto* w = std::get_if<WarpProfile>(&profile)) return w->phi.size();
    return std::get<DoublyWarpProfile>(profile).b.size();
}

DoublyWarpProfile as_doubly(const WarpProfile& profile) {
    DoublyWarpProfile out;
    out.p = 0;
    out.q = profile.m + 1;
    out.b = profile.phi;
    out.a = Profile1D::constant(profile.phi.nodes(), 1.0);
    return out;
}

PieceProfile reversed(const PieceProfile& profile) {
    return std::visit(
        [](const auto& pr) -> PieceProfile {
            auto out = pr;
            if constexpr (std::is_same_v<std::decay_t<decltype(pr)>, WarpProfile>) {
                out.phi = pr.phi.reversed();
            } else {
                if (!pr.a.empty()) out.a = pr.a.reversed();
                out.b = pr.b.reversed();
            }
            return out;
        },
        profile);
}

}  // namespace neck
