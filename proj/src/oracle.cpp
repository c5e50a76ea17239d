#include "neck/oracle.hpp"

#include <cmath>
#include <random>

#include "neck/error.hpp"

namespace neck {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd checked_metric(const CoordinateChartMetric& chart, const VectorXd& x) {
    MatrixXd g = chart.metric_fn(x);
    require(g.rows() == chart.dim && g.cols() == chart.dim, ErrorKind::InvalidArgument,
            "metric_fn returned a matrix of the wrong size");
    Eigen::LLT<MatrixXd> llt(0.5 * (g + g.transpose()));
    require(llt.info() == Eigen::Success && (g - g.transpose()).norm() <= 1e-12 * (1.0 + g.norm()),
            ErrorKind::SingularMetric, "metric not symmetric positive definite at a stencil node");
    return g;
}

// Conformal factor of the stereographic round metric on S^k at y.
double stereo_factor(const VectorXd& x, int offset, int k) {
    double r2 = 0.0;
    for (int i = 0; i < k; ++i) r2 += x(offset + i) * x(offset + i);
    const double c = 2.0 / (1.0 + r2);
    return c * c;
}

}  // namespace

double finite_difference_scalar(const CoordinateChartMetric& chart, const VectorXd& point, double h) {
    const int n = chart.dim;
    require(h > 0.0, ErrorKind::InvalidArgument, "step h must be positive");
    require(point.size() == n, ErrorKind::InvalidArgument, "point dimension mismatch");
    for (int i = 0; i < n; ++i) {
        require(point(i) - 2.0 * h >= chart.box_lo(i) && point(i) + 2.0 * h <= chart.box_hi(i),
                ErrorKind::BoundaryProximity, "point closer than 2h to the chart boundary");
    }

    auto shifted = [&](int i, double si, int j, double sj) {
        VectorXd y = point;
        if (i >= 0) y(i) += si * h;
        if (j >= 0) y(j) += sj * h;
        return checked_metric(chart, y);
    };

    const MatrixXd g = checked_metric(chart, point);
    const MatrixXd ginv = g.inverse();
    std::vector<MatrixXd> plus(n), minus(n), dg(n);
    for (int k = 0; k < n; ++k) {
        plus[k] = shifted(k, 1.0, -1, 0.0);
        minus[k] = shifted(k, -1.0, -1, 0.0);
        dg[k] = (plus[k] - minus[k]) / (2.0 * h);
    }
    std::vector<std::vector<MatrixXd>> ddg(n, std::vector<MatrixXd>(n));
    for (int k = 0; k < n; ++k) {
        ddg[k][k] = (plus[k] - 2.0 * g + minus[k]) / (h * h);
        for (int l = k + 1; l < n; ++l) {
            ddg[k][l] = (shifted(k, 1, l, 1) - shifted(k, 1, l, -1) - shifted(k, -1, l, 1) +
                         shifted(k, -1, l, -1)) /
                        (4.0 * h * h);
            ddg[l][k] = ddg[k][l];
        }
    }

    // Gamma[a](b, c) and dGamma[e][a](b, c) = d_e Gamma^a_{bc}.
    std::vector<MatrixXd> gamma(n, MatrixXd::Zero(n, n));
    std::vector<std::vector<MatrixXd>> dgamma(n, std::vector<MatrixXd>(n, MatrixXd::Zero(n, n)));
    std::vector<MatrixXd> dginv(n);
    for (int e = 0; e < n; ++e) dginv[e] = -ginv * dg[e] * ginv;

    for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) {
            VectorXd lower(n);  // Gamma_{d,bc}
            for (int d = 0; d < n; ++d) lower(d) = 0.5 * (dg[b](d, c) + dg[c](d, b) - dg[d](b, c));
            for (int a = 0; a < n; ++a) gamma[a](b, c) = ginv.row(a).dot(lower);
            for (int e = 0; e < n; ++e) {
                VectorXd dlower(n);
                for (int d = 0; d < n; ++d) {
                    dlower(d) = 0.5 * (ddg[e][b](d, c) + ddg[e][c](d, b) - ddg[e][d](b, c));
                }
                for (int a = 0; a < n; ++a) {
                    dgamma[e][a](b, c) = dginv[e].row(a).dot(lower) + ginv.row(a).dot(dlower);
                }
            }
        }
    }

    double scalar = 0.0;
    for (int b = 0; b < n; ++b) {
        for (int d = 0; d < n; ++d) {
            double ric = 0.0;
            for (int a = 0; a < n; ++a) {
                ric += dgamma[a][a](b, d) - dgamma[d][a](a, b);
                for (int e = 0; e < n; ++e) {
                    ric += gamma[a](a, e) * gamma[e](b, d) - gamma[a](d, e) * gamma[e](a, b);
                }
            }
            scalar += ginv(b, d) * ric;
        }
    }
    return scalar;
}

bool chart_is_riemannian(const CoordinateChartMetric& chart, int samples, unsigned seed) {
    std::mt19937_64 rng(seed);
    for (int k = 0; k < samples; ++k) {
        VectorXd x(chart.dim);
        for (int i = 0; i < chart.dim; ++i) {
            std::uniform_real_distribution<double> u(chart.box_lo(i), chart.box_hi(i));
            x(i) = u(rng);
        }
        try {
            checked_metric(chart, x);
        } catch (const GeometryError&) {
            return false;
        }
    }
    return true;
}

CoordinateChartMetric euclidean_chart(int n) {
    CoordinateChartMetric c;
    c.dim = n;
    c.metric_fn = [n](const VectorXd&) { return MatrixXd::Identity(n, n); };
    c.box_lo = VectorXd::Constant(n, -1.0);
    c.box_hi = VectorXd::Constant(n, 1.0);
    return c;
}

CoordinateChartMetric round_sphere_chart(int n, double radius) {
    CoordinateChartMetric c;
    c.dim = n;
    c.metric_fn = [n, radius](const VectorXd& x) {
        return MatrixXd(MatrixXd::Identity(n, n) * (radius * radius * stereo_factor(x, 0, n)));
    };
    c.box_lo = VectorXd::Constant(n, -2.0);
    c.box_hi = VectorXd::Constant(n, 2.0);
    return c;
}

namespace {

CoordinateChartMetric product_chart(int p, int m, double s_lo, double s_hi,
                                    std::function<std::pair<double, double>(double)> radii) {
    CoordinateChartMetric c;
    c.dim = 1 + p + m;
    const int dim = c.dim;
    c.metric_fn = [=](const VectorXd& x) {
        const auto [a, b] = radii(x(0));
        MatrixXd g = MatrixXd::Zero(dim, dim);
        g(0, 0) = 1.0;
        const double fa = p == 1 ? 1.0 : stereo_factor(x, 1, p);
        for (int i = 0; i < p; ++i) g(1 + i, 1 + i) = a * a * fa;
        const double fb = m == 1 ? 1.0 : stereo_factor(x, 1 + p, m);
        for (int i = 0; i < m; ++i) g(1 + p + i, 1 + p + i) = b * b * fb;
        return g;
    };
    c.box_lo = VectorXd::Constant(dim, -2.0);
    c.box_hi = VectorXd::Constant(dim, 2.0);
    c.box_lo(0) = s_lo;
    c.box_hi(0) = s_hi;
    return c;
}

}  // namespace

CoordinateChartMetric warped_chart(const WarpProfile& profile) {
    const Profile1D phi = profile.phi;
    return product_chart(0, profile.m, phi.front_s(), phi.back_s(),
                         [phi](double s) { return std::pair{0.0, phi.eval(s).f}; });
}

CoordinateChartMetric doubly_warped_chart(const DoublyWarpProfile& profile) {
    const Profile1D a = profile.a, b = profile.b;
    const int p = profile.p;
    return product_chart(p, profile.fiber_dim(), b.front_s(), b.back_s(), [a, b, p](double s) {
        return std::pair{p > 0 ? a.eval(s).f : 0.0, b.eval(s).f};
    });
}

CoordinateChartMetric analytic_warped_chart(int m, double s_lo, double s_hi,
                                            std::function<double(double)> phi) {
    return product_chart(0, m, s_lo, s_hi, [phi](double s) { return std::pair{0.0, phi(s)}; });
}

}  // namespace neck
