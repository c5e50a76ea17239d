#include "neck/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "neck/error.hpp"

namespace neck {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kJetTol = 1e-8;
constexpr double kMaxStretch = 1048576.0;  // 2^20

// Quintic smoothstep and its first two derivatives.
Jet smoothstep(double x) {
    if (x <= 0.0) return {0.0, 0.0, 0.0};
    if (x >= 1.0) return {1.0, 0.0, 0.0};
    const double x2 = x * x;
    return {x2 * x * (x * (6.0 * x - 15.0) + 10.0), 30.0 * x2 * (x - 1.0) * (x - 1.0), 60.0 * x * (2.0 * x2 - 3.0 * x + 1.0)};
}

// v0 -> v1 over tau in [lo, hi], constant outside.
Jet ramp_between(double tau, double lo, double hi, double v0, double v1) {
    const double w = hi - lo;
    const Jet s = smoothstep((tau - lo) / w);
    const double dv = v1 - v0;
    return {v0 + dv * s.f, dv * s.d1 / w, dv * s.d2 / (w * w)};
}

double rel_gap(const Jet& x, const Jet& y) {
    const double scale = std::max(std::abs(x.f), std::abs(y.f));
    return std::max({std::abs(x.f - y.f) / scale, std::abs(x.d1 - y.d1), std::abs(x.d2 - y.d2) * scale});
}

std::size_t pole_grid_nodes(double length, double radius) {
    // ~1000 nodes per half great circle keeps the pole-adjacent closed form well conditioned
    return std::max<std::size_t>(257, static_cast<std::size_t>(std::ceil(1000.0 * length / (std::numbers::pi * radius))));
}

}  // namespace

BoundaryInterface BoundaryInterface::of(const PieceProfile& piece, bool back) {
    BoundaryInterface bi;
    auto pick = [back](const Profile1D& f) { return back ? f.back() : f.front(); };
    if (const auto* w = std::get_if<WarpProfile>(&piece)) {
        bi.kind = Kind::RoundSphere;
        bi.p = 0;
        bi.q = w->m + 1;
        bi.b = pick(w->phi);
    } else {
        const auto& d = std::get<DoublyWarpProfile>(piece);
        bi.p = d.p;
        bi.q = d.q;
        bi.kind = d.p > 0 ? Kind::ProductOfRounds : Kind::RoundSphere;
        bi.b = pick(d.b);
        if (d.p > 0) bi.a = pick(d.a);
    }
    bi.totally_geodesic = std::abs(bi.b.d1) <= 1e-12 && (bi.p == 0 || std::abs(bi.a.d1) <= 1e-12);
    return bi;
}

double jet_mismatch(const BoundaryInterface& lhs, const BoundaryInterface& rhs) {
    if (lhs.p != rhs.p || lhs.q != rhs.q) return kInf;
    double gap = rel_gap(lhs.b, rhs.b);
    if (lhs.p > 0) gap = std::max(gap, rel_gap(lhs.a, rhs.a));
    return gap;
}

double MetricPath::scalar_at(double tau) const {
    const double r = p > 0 ? rho.eval(tau).f : 1.0;
    const double s = sigma.eval(tau).f;
    double R = (q - 1) * (q - 2) / (s * s);
    if (p > 1) R += p * (p - 1) / (r * r);
    return R;
}

double MetricPath::min_scalar() const {
    const auto& t = sigma.nodes();
    double out = kInf;
    for (std::size_t i = 0; i < t.size(); ++i) {
        out = std::min(out, scalar_at(t[i]));
        if (i + 1 < t.size()) out = std::min(out, scalar_at(0.5 * (t[i] + t[i + 1])));
    }
    return out;
}

MetricPath radii_path(int p, int q, double rho0, double sigma0, double rho1, double sigma1, std::size_t nodes) {
    require(nodes >= 9 && nodes % 2 == 1, ErrorKind::DegenerateGrid, "path grid needs an odd node count >= 9");
    require(sigma0 > 0.0 && sigma1 > 0.0 && (p == 0 || (rho0 > 0.0 && rho1 > 0.0)), ErrorKind::NonPositiveWarp,
            "path radii must be positive");
    const auto tau = Profile1D::uniform_grid(1.0, nodes);
    const bool sigma_first = sigma1 < sigma0;
    const double s_lo = sigma_first ? 0.0 : 0.5, r_lo = sigma_first ? 0.5 : 0.0;
    MetricPath path;
    path.p = p;
    path.q = q;
    path.sigma = Profile1D::from_function(tau, [&](double t) { return ramp_between(t, s_lo, s_lo + 0.5, sigma0, sigma1); });
    path.rho = p > 0 ? Profile1D::from_function(tau, [&](double t) { return ramp_between(t, r_lo, r_lo + 0.5, rho0, rho1); })
                     : Profile1D::constant(tau, 1.0);
    return path;
}

MetricPath linear_radii_path(int p, int q, double rho0, double sigma0, double rho1, double sigma1, std::size_t nodes) {
    require(nodes >= 2, ErrorKind::DegenerateGrid, "path grid needs two nodes");
    require(sigma0 > 0.0 && sigma1 > 0.0 && (p == 0 || (rho0 > 0.0 && rho1 > 0.0)), ErrorKind::NonPositiveWarp,
            "path radii must be positive");
    const auto tau = Profile1D::uniform_grid(1.0, nodes);
    MetricPath path;
    path.p = p;
    path.q = q;
    path.rho = Profile1D::from_function(tau, [&](double t) { return Jet{rho0 + (rho1 - rho0) * t, rho1 - rho0, 0.0}; });
    path.sigma =
        Profile1D::from_function(tau, [&](double t) { return Jet{sigma0 + (sigma1 - sigma0) * t, sigma1 - sigma0, 0.0}; });
    return path;
}

MetricPath boundary_homotopy(const BoundaryInterface& start, double target_a, double kappa, double delta,
                             double target_rho) {
    // a < delta is not enforced: a = 0.03 against kappa - delta = 5.99 is a valid
    // target, only the pointwise floor decides
    require(target_a > 0.0, ErrorKind::ParameterOutOfRange, "target radius a must be positive");
    require(std::abs(start.b.d1) <= kJetTol && std::abs(start.b.d2) * start.b.f <= kJetTol &&
                (start.p == 0 || (std::abs(start.a.d1) <= kJetTol && std::abs(start.a.d2) * start.a.f <= kJetTol)),
            ErrorKind::InvalidArgument, "homotopy must start from a product (cylindrical) end");
    const double rho0 = start.p > 0 ? start.a.f : 1.0;
    auto path = radii_path(start.p, start.q, rho0, start.b.f, start.p > 0 ? target_rho : 1.0, target_a);
    const double m = path.min_scalar();
    require(m > kappa - delta, ErrorKind::InfeasibleBudget,
            "homotopy dips to R = " + std::to_string(m) + " <= " + std::to_string(kappa - delta));
    return path;
}

DoublyWarpProfile collar_metric(const CollarSpec& spec) {
    require(spec.c > 0.0, ErrorKind::InvalidArgument, "collar stretch c must be positive");
    // h_{s/c}: stretching tau by c scales k-th derivatives by c^-k
    DoublyWarpProfile d{spec.path.rho.scaled(spec.c, 1.0), spec.path.sigma.scaled(spec.c, 1.0), spec.path.p,
                        spec.path.q};
    d.validate();
    return d;
}

double verified_min_scalar(const PieceProfile& piece) {
    const auto R = scalar_curvature(piece);
    double out = *std::min_element(R.begin(), R.end());
    const auto& s = std::visit(
        [](const auto& pr) -> const std::vector<double>& {
            if constexpr (std::is_same_v<std::decay_t<decltype(pr)>, WarpProfile>) return pr.phi.nodes();
            else return pr.b.nodes();
        },
        piece);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) out = std::min(out, scalar_curvature_at(piece, 0.5 * (s[i] + s[i + 1])));
    return out;
}

double choose_stretch(const MetricPath& path, double kappa, double delta) {
    const double floor = kappa - delta;
    require(path.min_scalar() > floor, ErrorKind::InfeasibleBudget, "path itself does not clear kappa - delta");
    for (double c = 1.0; c <= kMaxStretch; c *= 2.0) {
        if (verified_min_scalar(collar_metric({path, c})) > floor) return c;
    }
    fail(ErrorKind::InfeasibleBudget, "no collar up to c = 2^20 clears kappa - delta");
}

Profile1D torpedo_profile(double r, double w, std::size_t nodes_per_part) {
    using boost::math::quadrature::gauss;
    require(r > 0.0 && w > 0.0 && w <= r, ErrorKind::InvalidArgument, "torpedo needs 0 < w <= r");
    // f' = -sin(psi), psi' = S(s/w)/rho: the slope turns on smoothly from the
    // cylinder and the tip is a round cap of radius rho.
    auto psi_of = [w](double x, double rho) {
        const double u = std::min(x / w, 1.0);
        const double u4 = u * u * u * u;
        return (w * u4 * (u * u - 3.0 * u + 2.5) + std::max(x - w, 0.0)) / rho;
    };
    auto drop = [&](double rho) {
        return gauss<double, 20>::integrate([&](double x) { return std::sin(psi_of(x, rho)); }, 0.0, w);
    };
    // f(w) must equal rho cos(psi(w)) for the round tip to close at f = 0
    auto mismatch = [&](double rho) { return r - drop(rho) - rho * std::cos(psi_of(w, rho)); };
    // mismatch > 0 when psi(w) = pi/2, and -> -inf as rho grows
    double lo = w / std::numbers::pi, hi = r;
    while (mismatch(hi) > 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mismatch(mid) > 0.0 ? lo : hi) = mid;
    }
    const double rho = 0.5 * (lo + hi);
    const double psi_w = psi_of(w, rho);
    const double end = w + rho * (0.5 * std::numbers::pi - psi_w);

    std::vector<double> s = Profile1D::uniform_grid(w, nodes_per_part);
    const std::size_t tail = pole_grid_nodes(end - w, rho);
    for (std::size_t i = 1; i < tail; ++i) s.push_back(w + (end - w) * static_cast<double>(i) / (tail - 1));
    s.back() = end;
    std::vector<Jet> jets(s.size());
    double f = r;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double x = s[i];
        const double psi = psi_of(x, rho);
        if (x <= w) {
            if (i > 0) f -= gauss<double, 20>::integrate([&](double y) { return std::sin(psi_of(y, rho)); }, s[i - 1], x);
            jets[i] = Jet{f, -std::sin(psi), -std::cos(psi) * smoothstep(x / w).f / rho};
        } else {
            const double t = (end - x) / rho;
            jets[i] = Jet{rho * std::sin(t), -std::cos(t), -std::sin(t) / rho};
        }
    }
    jets.back() = Jet{0.0, -1.0, 0.0};
    return Profile1D::from_jets(std::move(s), std::move(jets)).with_end_third_derivatives(std::nullopt, 1.0 / (rho * rho));
}

CapPiece cap_piece(int p, int q, double a) {
    require(a > 0.0, ErrorKind::InvalidArgument, "cap radius must be positive");
    require(q >= 3, ErrorKind::CodimensionTooSmall, "codimension q must be >= 3");
    CapPiece cap;
    if (p == 0) {
        cap.profile = WarpProfile{torpedo_profile(a, a), q - 1};
    } else {
        auto disk = torpedo_profile(1.0, 1.0);
        auto fiber = Profile1D::constant(disk.nodes(), a);
        cap.profile = DoublyWarpProfile{std::move(disk), std::move(fiber), p, q};
    }
    std::visit([](const auto& pr) { pr.validate(); }, cap.profile);
    cap.interface = BoundaryInterface::of(cap.profile, false);
    return cap;
}

std::string to_string(PieceRole role) {
    switch (role) {
        case PieceRole::Body: return "body";
        case PieceRole::Neck: return "neck";
        case PieceRole::Collar: return "collar";
        case PieceRole::Cylinder: return "cylinder";
        case PieceRole::Cap: return "cap";
    }
    return "?";
}

void Assembly::append(PieceRole role, std::string label, PieceProfile profile) {
    if (!pieces.empty()) {
        const auto left = BoundaryInterface::of(pieces.back().profile, true);
        const auto right = BoundaryInterface::of(profile, false);
        const double gap = jet_mismatch(left, right);
        require(gap <= kJetTol, ErrorKind::InterfaceMismatch,
                "jets differ by " + std::to_string(gap) + " between " + pieces.back().label + " and " + label);
        interfaces.push_back(left);
        interface_mismatch.push_back(gap);
    }
    AssemblyPiece piece;
    piece.role = role;
    piece.label = std::move(label);
    piece.min_R = verified_min_scalar(profile);
    const auto v = volume(profile);
    piece.volume = v.value;
    piece.volume_error = v.error_estimate;
    piece.profile = std::move(profile);
    pieces.push_back(std::move(piece));
}

void Assembly::append_all(const Assembly& other) {
    for (const auto& pc : other.pieces) append(pc.role, pc.label, pc.profile);
}

double Assembly::global_min_R() const {
    double out = kInf;
    for (const auto& pc : pieces) out = std::min(out, pc.min_R);
    return out;
}

double Assembly::total_volume() const {
    double out = 0.0;
    for (const auto& pc : pieces) out += pc.volume;
    return out;
}

double Assembly::axial_length() const {
    double out = 0.0;
    for (const auto& pc : pieces) out += length(pc.profile);
    return out;
}

double Assembly::max_mismatch() const {
    double out = 0.0;
    for (double g : interface_mismatch) out = std::max(out, g);
    return out;
}

DiameterBounds diameter(const Assembly& assembly) {
    require(!assembly.pieces.empty(), ErrorKind::UnsupportedPiece, "empty assembly");
    double fiber = 0.0;
    for (const auto& pc : assembly.pieces) {
        require(node_count(pc.profile) >= 8, ErrorKind::UnsupportedPiece, "piece " + pc.label + " has no profile");
        fiber = std::max(fiber, max_fiber_diameter(pc.profile));
    }
    const double L = assembly.axial_length();
    return {L, L + 2.0 * fiber};
}

double model_volume(const AmbientModel& model) {
    require(model.curvature > 0.0, ErrorKind::UnsupportedPiece, "closed model needs a spherical fiber");
    const double R = 1.0 / std::sqrt(model.curvature);
    double v = unit_sphere_volume(model.q) * std::pow(R, model.q);
    if (model.p > 0) v *= unit_sphere_volume(model.p) * std::pow(model.rho_p, model.p);
    return v;
}

namespace {

PieceProfile model_piece(const AmbientModel& model, double r_from, double r_to, bool pole_front) {
    // distance from the core runs r_from -> r_to; s = |r - r_from|
    const double L = std::abs(r_to - r_from);
    const double dir = r_to > r_from ? 1.0 : -1.0;
    const double K = model.curvature;
    auto s = Profile1D::uniform_grid(L, pole_grid_nodes(L, 1.0 / std::sqrt(K)));
    auto b = Profile1D::from_function(std::move(s), [&](double x) {
        const double r = r_from + dir * x;
        return Jet{model.sn(r), dir * model.cn(r), -K * model.sn(r)};
    });
    if (pole_front) b = b.with_end_third_derivatives(-K * dir * model.cn(r_from), std::nullopt);
    if (model.p == 0) return WarpProfile{std::move(b), model.q - 1};
    return DoublyWarpProfile{Profile1D::constant(b.nodes(), model.rho_p), std::move(b), model.p, model.q};
}

}  // namespace

PieceProfile body_complement(const AmbientModel& model, double r0) {
    model.validate();
    require(model.curvature > 0.0, ErrorKind::UnsupportedPiece, "closed model needs a spherical fiber");
    require(r0 > 0.0 && r0 < model.max_radius(), ErrorKind::RadiusExceedsModel, "tube radius outside the model");
    return model_piece(model, model.max_radius(), r0, true);
}

PieceProfile hemisphere_complement(const AmbientModel& model, double r0) {
    model.validate();
    require(model.p == 0 && model.curvature > 0.0, ErrorKind::UnsupportedPiece, "hemisphere needs a round model");
    const double equator = 0.5 * model.max_radius();
    require(r0 > 0.0 && r0 < equator, ErrorKind::RadiusExceedsModel, "ball radius beyond the equator");
    return model_piece(model, r0, equator, false);
}

PieceProfile model_band(const AmbientModel& model, double r_from, double r_to) {
    model.validate();
    const double top = model.curvature > 0.0 ? model.max_radius() : kInf;
    require(r_from > 0.0 && r_to > 0.0 && r_from < top && r_to < top && r_from != r_to, ErrorKind::RadiusExceedsModel,
            "band radii outside the model");
    return model_piece(model, r_from, r_to, false);
}

NeckPiece tunnel_neck(const AmbientModel& model, double delta, double kappa, double budget, double density) {
    CurveDesignParams P;
    P.ambient = model;
    P.p = model.p;
    P.q = model.q;
    P.n = model.n();
    P.kappa = kappa;
    P.delta = budget;
    P.tube_delta = delta;
    P.density = density;
    // keep theta = 0 down to r = delta so E = B(2 delta) \ B(delta) is untouched
    P.vertical_fraction = 1.0 - 1.0 / (0.99 * 2.0);
    NeckPiece out{PieceProfile{}, design_bending_curve(P)};
    out.profile = induce_sigma_metric(out.design.curve, model);
    return out;
}

Assembly build_tunnel_between(const AmbientModel& left, const AmbientModel& right, double delta, double d, int j,
                              double kappa, double density) {
    require(left.p == 0 && right.p == 0 && left.q == right.q, ErrorKind::InvalidArgument,
            "tunnels join round models of equal dimension");
    require(j >= 1 && d >= 0.0 && delta > 0.0, ErrorKind::ParameterOutOfRange, "need j >= 1, d >= 0, delta > 0");
    const int n = left.q;
    require(n >= 3, ErrorKind::CodimensionTooSmall, "tunnels need n >= 3");
    require(left.kappa() >= kappa && right.kappa() >= kappa, ErrorKind::InfeasibleBudget,
            "model scalar curvature below kappa");
    // each neck spends half the tunnel budget below kappa
    const double budget = 0.5 / j;
    auto same = [](const AmbientModel& x, const AmbientModel& y) {
        return x.kind == y.kind && x.q == y.q && x.curvature == y.curvature;
    };
    const auto nl = tunnel_neck(left, delta, kappa, budget, density);
    const auto nr = same(left, right) ? nl : tunnel_neck(right, delta, kappa, budget, density);

    Assembly T;
    T.provenance = Provenance{delta, d, j, kappa, n, 0, n, kappa - 1.0 / j};
    T.curve_C = std::max(nl.design.achieved_C, nr.design.achieved_C);
    T.append(PieceRole::Neck, "neck-left", nl.profile);

    const auto end_l = BoundaryInterface::of(nl.profile, true);
    const auto end_r = BoundaryInterface::of(reversed(nr.profile), false);
    const double sig = end_l.b.f;
    if (d > 0.0) {
        auto s = Profile1D::uniform_grid_density(d, density, 16);
        T.append(PieceRole::Cylinder, "cylinder", WarpProfile{Profile1D::constant(std::move(s), sig), n - 1});
    }
    if (std::abs(end_r.b.f - sig) > 1e-15 * sig) {
        auto path = radii_path(0, n, 1.0, sig, 1.0, end_r.b.f);
        const double c = choose_stretch(path, kappa, 1.0 / j);
        T.append(PieceRole::Collar, "collar", collar_metric({path, c}));
    }
    T.append(PieceRole::Neck, "neck-right", reversed(nr.profile));
    return T;
}

Assembly build_tunnel(double delta, double d, int j, double kappa, int n, double density) {
    require(kappa > 0.0, ErrorKind::InvalidArgument, "tunnels here live in round models (kappa > 0)");
    const auto model = AmbientModel::round_sphere(n, std::sqrt(n * (n - 1) / kappa));
    return build_tunnel_between(model, model, delta, d, j, kappa, density);
}

Assembly perform_surgery(const AmbientModel& ambient, int p, int q, double delta, int j) {
    require(q >= 3, ErrorKind::CodimensionTooSmall, "surgery needs codimension q >= 3, got " + std::to_string(q));
    require(ambient.p == p && ambient.q == q, ErrorKind::InvalidArgument, "p, q disagree with the ambient model");
    require(delta > 0.0, ErrorKind::ParameterOutOfRange, "delta must be positive");
    const double kappa = ambient.kappa();
    const double floor = kappa - delta;
    const double budget = j > 0 ? std::min(0.5 * delta, 0.5 / j) : 0.5 * delta;

    CurveDesignParams P;
    P.ambient = ambient;
    P.p = p;
    P.q = q;
    P.n = p + q;
    P.kappa = kappa;
    P.delta = budget;
    P.tube_delta = delta;
    const auto design = design_bending_curve(P);
    const auto neck = induce_sigma_metric(design.curve, ambient);

    Assembly N;
    N.provenance = Provenance{delta, 0.0, j, kappa, p + q, p, q, floor};
    N.curve_C = design.achieved_C;
    N.append(PieceRole::Body, "body", body_complement(ambient, design.curve.r0()));
    N.append(PieceRole::Neck, "neck", neck);

    const double a = 0.5 * delta;
    const auto path = boundary_homotopy(BoundaryInterface::of(neck, true), a, kappa, delta);
    const double c = choose_stretch(path, kappa, delta);
    N.append(PieceRole::Collar, "collar", collar_metric({path, c}));
    auto cap = cap_piece(p, q, a);
    N.append(PieceRole::Cap, "cap", std::move(cap.profile));
    return N;
}

}  // namespace neck
