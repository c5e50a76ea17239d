#include "neck/profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "neck/error.hpp"

namespace neck {

namespace {

void check_grid(const std::vector<double>& s) {
    require(s.size() >= 8, ErrorKind::DegenerateGrid,
            "profile needs at least 8 nodes, got " + std::to_string(s.size()));
    for (std::size_t i = 1; i < s.size(); ++i) {
        require(s[i] > s[i - 1], ErrorKind::DegenerateGrid, "grid nodes must be strictly increasing");
    }
}

// Monomial coefficients in t = (x - x0) / h of the quintic through both jets.
struct Quintic {
    double c[6];
    double h;
};

Quintic quintic(const Jet& a, const Jet& b, double h) {
    const double df = b.f - a.f;
    const double p0 = h * a.d1, p1 = h * b.d1;
    const double q0 = h * h * a.d2, q1 = h * h * b.d2;
    Quintic out{};
    out.h = h;
    out.c[0] = a.f;
    out.c[1] = p0;
    out.c[2] = 0.5 * q0;
    out.c[3] = 10.0 * df - 6.0 * p0 - 4.0 * p1 - 1.5 * q0 + 0.5 * q1;
    out.c[4] = -15.0 * df + 8.0 * p0 + 7.0 * p1 + 1.5 * q0 - q1;
    out.c[5] = 6.0 * df - 3.0 * p0 - 3.0 * p1 - 0.5 * q0 + 0.5 * q1;
    return out;
}

Eval eval_quintic(const Quintic& q, double t) {
    const double* c = q.c;
    Eval e;
    e.f = c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * (c[4] + t * c[5]))));
    const double dt = c[1] + t * (2 * c[2] + t * (3 * c[3] + t * (4 * c[4] + t * 5 * c[5])));
    const double dtt = 2 * c[2] + t * (6 * c[3] + t * (12 * c[4] + t * 20 * c[5]));
    const double dttt = 6 * c[3] + t * (24 * c[4] + t * 60 * c[5]);
    e.d1 = dt / q.h;
    e.d2 = dtt / (q.h * q.h);
    e.d3 = dttt / (q.h * q.h * q.h);
    return e;
}

}  // namespace

Profile1D::Profile1D(std::vector<double> s, std::vector<Jet> jets)
    : s_(std::move(s)), jets_(std::move(jets)) {}

std::vector<double> not_a_knot_second_derivatives(std::span<const double> s,
                                                  std::span<const double> f) {
    const std::size_t n = s.size();
    require(n >= 4 && f.size() == n, ErrorKind::DegenerateGrid, "spline needs >= 4 matching samples");
    std::vector<double> h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = s[i + 1] - s[i];

    // Unknowns M_1..M_{n-2}; M_0 and M_{n-1} eliminated through the not-a-knot rows.
    const std::size_t k = n - 2;
    std::vector<double> lo(k, 0.0), di(k, 0.0), up(k, 0.0), rhs(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t i = j + 1;
        lo[j] = h[i - 1];
        di[j] = 2.0 * (h[i - 1] + h[i]);
        up[j] = h[i];
        rhs[j] = 6.0 * ((f[i + 1] - f[i]) / h[i] - (f[i] - f[i - 1]) / h[i - 1]);
    }
    // M_0 = ((h0 + h1) M_1 - h0 M_2) / h1
    di[0] += h[0] * (h[0] + h[1]) / h[1];
    up[0] -= h[0] * h[0] / h[1];
    lo[0] = 0.0;
    // M_{n-1} = ((h_{n-3} + h_{n-2}) M_{n-2} - h_{n-2} M_{n-3}) / h_{n-3}
    {
        const double a = h[n - 3], b = h[n - 2];
        di[k - 1] += b * (a + b) / a;
        if (k >= 2) lo[k - 1] -= b * b / a;
        up[k - 1] = 0.0;
    }
    // Thomas algorithm.
    for (std::size_t j = 1; j < k; ++j) {
        const double w = lo[j] / di[j - 1];
        di[j] -= w * up[j - 1];
        rhs[j] -= w * rhs[j - 1];
    }
    std::vector<double> m(n, 0.0);
    m[k] = rhs[k - 1] / di[k - 1];
    for (std::size_t j = k - 1; j-- > 0;) m[j + 1] = (rhs[j] - up[j] * m[j + 2]) / di[j];
    m[0] = ((h[0] + h[1]) * m[1] - h[0] * m[2]) / h[1];
    m[n - 1] = ((h[n - 3] + h[n - 2]) * m[n - 2] - h[n - 2] * m[n - 3]) / h[n - 3];
    return m;
}

Profile1D Profile1D::from_samples(std::vector<double> s, std::span<const double> f) {
    check_grid(s);
    require(f.size() == s.size(), ErrorKind::InvalidArgument, "sample count mismatch");
    const auto m = not_a_knot_second_derivatives(s, f);
    const std::size_t n = s.size();
    std::vector<Jet> jets(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = s[i + 1] - s[i];
        jets[i] = {f[i], (f[i + 1] - f[i]) / h - h * (2.0 * m[i] + m[i + 1]) / 6.0, m[i]};
    }
    const double h = s[n - 1] - s[n - 2];
    jets[n - 1] = {f[n - 1], (f[n - 1] - f[n - 2]) / h + h * (m[n - 2] + 2.0 * m[n - 1]) / 6.0, m[n - 1]};
    const double d3_front = (m[1] - m[0]) / (s[1] - s[0]);
    const double d3_back = (m[n - 1] - m[n - 2]) / h;
    Profile1D out(std::move(s), std::move(jets));
    out.d3_front_ = d3_front;
    out.d3_back_ = d3_back;
    return out;
}

Profile1D Profile1D::from_jets(std::vector<double> s, std::vector<Jet> jets) {
    check_grid(s);
    require(jets.size() == s.size(), ErrorKind::InvalidArgument, "jet count mismatch");
    return Profile1D(std::move(s), std::move(jets));
}

Profile1D Profile1D::from_function(std::vector<double> s, const std::function<Jet(double)>& fn) {
    std::vector<Jet> jets;
    jets.reserve(s.size());
    for (double x : s) jets.push_back(fn(x));
    return from_jets(std::move(s), std::move(jets));
}

Profile1D Profile1D::constant(std::vector<double> s, double value) {
    std::vector<Jet> jets(s.size(), Jet{value, 0.0, 0.0});
    return from_jets(std::move(s), std::move(jets));
}

std::vector<double> Profile1D::uniform_grid(double length, std::size_t nodes) {
    require(length > 0.0, ErrorKind::DegenerateGrid, "profile length must be positive");
    require(nodes >= 2, ErrorKind::DegenerateGrid, "need at least two nodes");
    std::vector<double> s(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        s[i] = length * static_cast<double>(i) / static_cast<double>(nodes - 1);
    }
    s.back() = length;
    return s;
}

std::vector<double> Profile1D::uniform_grid_density(double length, double density,
                                                    std::size_t min_nodes) {
    const auto n = static_cast<std::size_t>(std::ceil(length * density)) + 1;
    return uniform_grid(length, std::max(n, min_nodes));
}

std::size_t Profile1D::cell_of(double x) const {
    if (x <= s_.front()) return 0;
    if (x >= s_.back()) return s_.size() - 2;
    auto it = std::upper_bound(s_.begin(), s_.end(), x);
    return static_cast<std::size_t>(it - s_.begin()) - 1;
}

Eval Profile1D::eval(double x) const {
    const std::size_t i = cell_of(x);
    const double h = s_[i + 1] - s_[i];
    const auto q = quintic(jets_[i], jets_[i + 1], h);
    return eval_quintic(q, (x - s_[i]) / h);
}

double Profile1D::end_third_derivative(bool back) const {
    if (back && d3_back_) return *d3_back_;
    if (!back && d3_front_) return *d3_front_;
    const std::size_t i = back ? s_.size() - 2 : 0;
    const double h = s_[i + 1] - s_[i];
    const auto q = quintic(jets_[i], jets_[i + 1], h);
    return eval_quintic(q, back ? 1.0 : 0.0).d3;
}

Profile1D Profile1D::with_end_third_derivatives(std::optional<double> front,
                                                std::optional<double> back) const {
    Profile1D out = *this;
    out.d3_front_ = front;
    out.d3_back_ = back;
    return out;
}

Profile1D Profile1D::reversed() const {
    const std::size_t n = s_.size();
    std::vector<double> s(n);
    std::vector<Jet> jets(n);
    const double a = s_.front(), b = s_.back();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = n - 1 - i;
        s[i] = a + (b - s_[j]);
        jets[i] = {jets_[j].f, -jets_[j].d1, jets_[j].d2};
    }
    s.front() = a;
    s.back() = b;
    Profile1D out(std::move(s), std::move(jets));
    if (d3_back_) out.d3_front_ = -*d3_back_;
    if (d3_front_) out.d3_back_ = -*d3_front_;
    return out;
}

Profile1D Profile1D::scaled(double s_scale, double f_scale) const {
    std::vector<double> s(s_.size());
    std::vector<Jet> jets(jets_.size());
    for (std::size_t i = 0; i < s_.size(); ++i) {
        s[i] = s_scale * s_[i];
        jets[i] = {f_scale * jets_[i].f, f_scale / s_scale * jets_[i].d1,
                   f_scale / (s_scale * s_scale) * jets_[i].d2};
    }
    Profile1D out(std::move(s), std::move(jets));
    const double k3 = f_scale / (s_scale * s_scale * s_scale);
    if (d3_front_) out.d3_front_ = k3 * *d3_front_;
    if (d3_back_) out.d3_back_ = k3 * *d3_back_;
    return out;
}

Profile1D Profile1D::rebased() const {
    std::vector<double> s(s_);
    const double a = s_.front();
    for (double& x : s) x -= a;
    Profile1D out(std::move(s), jets_);
    out.d3_front_ = d3_front_;
    out.d3_back_ = d3_back_;
    return out;
}

}  // namespace neck
