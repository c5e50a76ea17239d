#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <json.hpp>

#include "neck/certify.hpp"
#include "neck/error.hpp"
#include "neck/io.hpp"

namespace neck {

namespace {

constexpr double kStandInFactor = 1.001;
constexpr double kJetTol = 1e-8;

Certificate start(const std::string& pipeline, const PipelineOptions& opts) {
    Certificate c;
    c.pipeline = pipeline;
    c.seed = opts.seed;
    c.tolerances = {{"claim_margin", opts.tolerance},
                    {"closed_form_abs", 1e-9},
                    {"oracle_rel", 1e-4},
                    {"quadrature_cell", 1e-9},
                    {"jet_match", kJetTol}};
    c.grid["density"] = opts.grid_density;
    return c;
}

void record(Certificate& c, const Assembly& A) {
    std::int64_t total = 0, least = -1;
    for (const auto& pc : A.pieces) {
        const auto nodes = static_cast<std::int64_t>(node_count(pc.profile));
        c.pieces.push_back({pc.label, to_string(pc.role), length(pc.profile), pc.min_R, pc.volume, nodes});
        total += nodes;
        least = least < 0 ? nodes : std::min(least, nodes);
    }
    c.grid["total_nodes"] = static_cast<double>(total);
    c.grid["min_piece_nodes"] = static_cast<double>(least);
    c.global_min_R = A.global_min_R();
    c.volume = A.total_volume();
    const auto D = diameter(A);
    c.diameter_lower = D.lower;
    c.diameter_upper = D.upper;
    c.constants["curve_C"] = A.curve_C;
}

void floor_claim(Certificate& c, double floor) {
    c.floor = floor;
    c.add_claim("min_R_above_floor", c.global_min_R, ">", floor);
}

IngredientRecord record_of(const IngredientMetric& g, const std::string& trust) {
    return {g.name, g.model ? g.model->kind_name() : "profile", g.provenance, trust, g.certified_R_floor, g.volume};
}

std::string trust_of(const IngredientMetric& g) {
    if (g.stand_in) return "STAND-IN";
    return g.provenance == "builtin" ? "VERIFIED" : "EXTERNAL-TRUSTED";
}

// recover r0 of a neck from its first radius in a round model of radius rho
double neck_start_radius(const PieceProfile& neck, const AmbientModel& model) {
    const double rho = 1.0 / std::sqrt(model.curvature);
    const double b = std::get<WarpProfile>(neck).phi.front().f;
    return rho * std::asin(std::min(1.0, b / rho));
}

// largest deviation from the model on the untouched annulus r in [delta, r0]
double annulus_deviation(const PieceProfile& neck, const AmbientModel& model, double delta) {
    const auto& phi = std::get<WarpProfile>(neck).phi;
    const double r0 = neck_start_radius(neck, model);
    double worst = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const double r = r0 - phi.nodes()[i];
        if (r < delta) break;
        worst = std::max(worst, std::abs(phi.jet(i).f - model.sn(r)));
    }
    return worst;
}

// geodesic ball volume in a round model, by its own Gauss rule
double ball_volume(const AmbientModel& model, double r0) {
    using boost::math::quadrature::gauss;
    const int m = model.q - 1;
    return unit_sphere_volume(m) * gauss<double, 30>::integrate([&](double r) { return std::pow(model.sn(r), m); }, 0.0, r0);
}

Jet round_equator_jet(const AmbientModel& model) {
    const double rho = 1.0 / std::sqrt(model.curvature);
    return Jet{rho, 0.0, -1.0 / rho};
}

void boundary_claims(Certificate& c, const Jet& boundary, const Jet& expected) {
    BoundaryInterface got, want;
    got.b = boundary;
    want.b = expected;
    c.add_claim("boundary_jets_identical", jet_mismatch(got, want), "<=", 1e-12);
    c.add_claim("boundary_totally_geodesic", std::abs(boundary.d1), "<=", 1e-12);
}

int raise_j(int j, double margin) {
    require(margin > 0.0, ErrorKind::IngredientFloorTooLow, "no slack above n(n-1)");
    return std::max(j, static_cast<int>(std::ceil(2.0 / margin)));
}

// restriction of a profile to [x0, end], rebased to start at 0
Profile1D trimmed(const Profile1D& f, double x0) {
    const auto& s = f.nodes();
    const std::size_t i0 = f.cell_of(x0) + 1;
    std::vector<double> t{x0};
    std::vector<Jet> jets;
    const auto e = f.eval(x0);
    jets.push_back(Jet{e.f, e.d1, e.d2});
    const double h = s[i0] - s[i0 - 1];
    for (std::size_t i = i0; i < s.size(); ++i) {
        if (s[i] - x0 < 0.5 * h) continue;
        t.push_back(s[i]);
        jets.push_back(f.jet(i));
    }
    return Profile1D::from_jets(std::move(t), std::move(jets))
        .with_end_third_derivatives(std::nullopt, f.end_third_derivative(true))
        .rebased();
}

}  // namespace

// ---- ingredients

int IngredientMetric::dim() const {
    if (model) return model->n();
    return dimension(*profile);
}

void IngredientMetric::validate() const {
    require(model.has_value() || profile.has_value(), ErrorKind::MissingIngredient, "ingredient " + name + " is empty");
    double R = 0.0;
    if (model) {
        R = model->kappa();
    } else {
        const auto v = scalar_curvature(*profile);
        R = *std::min_element(v.begin(), v.end());
    }
    require(std::abs(R - certified_R_floor) <= 1e-9, ErrorKind::FloorCheckFailed,
            "ingredient " + name + " claims floor " + std::to_string(certified_R_floor) + " but recomputes to " +
                std::to_string(R));
}

IngredientMetric IngredientMetric::round_sphere(int n, double radius) {
    IngredientMetric g;
    char buf[64];
    std::snprintf(buf, sizeof buf, "round S^%d(%g)", n, radius);
    g.name = buf;
    g.model = AmbientModel::round_sphere(n, radius);
    g.certified_R_floor = g.model->kappa();
    g.volume = model_volume(*g.model);
    return g;
}

IngredientMetric IngredientMetric::hemisphere_stand_in(int n) {
    auto g = round_sphere(n, 1.0 / std::sqrt(kStandInFactor));
    g.name = "hemisphere stand-in";
    g.volume *= 0.5;
    g.stand_in = true;
    return g;
}

IngredientMetric IngredientMetric::unit_hemisphere_profile(int n) {
    IngredientMetric g;
    g.name = "unit round hemisphere";
    const double L = 0.5 * std::numbers::pi;
    auto phi = Profile1D::from_function(Profile1D::uniform_grid(L, 2049), [](double s) {
                   return Jet{std::sin(s), std::cos(s), -std::sin(s)};
               }).with_end_third_derivatives(-1.0, 0.0);
    g.profile = WarpProfile{std::move(phi), n - 1};
    g.certified_R_floor = n * (n - 1.0);
    g.volume = 0.5 * unit_sphere_volume(n);
    g.stand_in = true;
    return g;
}

IngredientMetric IngredientMetric::from_file(const std::filesystem::path& path) {
    const auto text = read_text(path);
    try {
        const auto j = nlohmann::json::parse(text);
        IngredientMetric g;
        g.name = j.at("name").get<std::string>();
        g.certified_R_floor = j.at("certified_R_floor").get<double>();
        g.volume = j.at("volume").get<double>();
        g.profile = profile_from_json(j.at("piece").dump());
        g.provenance = "external:" + path.filename().string();
        return g;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::SchemaViolation, std::string("ingredient file: ") + e.what());
    }
}

std::string IngredientMetric::to_json() const {
    require(profile.has_value(), ErrorKind::UnsupportedPiece, "only profile ingredients serialize");
    nlohmann::json j;
    j["name"] = name;
    j["certified_R_floor"] = certified_R_floor;
    j["volume"] = volume;
    j["piece"] = nlohmann::json::parse(profile_to_json(*profile));
    return j.dump();
}

// ---- tunnel and surgery

PipelineResult certify_tunnel(int n, double kappa, double delta, double d, int j, const PipelineOptions& opts) {
    PipelineResult out{start("build-tunnel", opts), build_tunnel(delta, d, j, kappa, n, opts.grid_density)};
    auto& c = out.certificate;
    const auto& T = out.assembly;
    c.parameters = {{"n", n}, {"kappa", kappa}, {"delta", delta}, {"d", d}, {"j", j}};
    record(c, T);
    floor_claim(c, kappa - 1.0 / j);
    c.add_claim("diameter_lower_exceeds_d", c.diameter_lower, ">", d);
    c.add_claim("diameter_upper_bound", c.diameter_upper, "<", kTunnelDiameterC * (delta + d));
    const double scale = std::pow(delta, n) + d * std::pow(delta, n - 1);
    c.add_claim("volume_bound", c.volume, "<", kTunnelVolumeC * scale);
    c.add_claim("interface_jets", T.max_mismatch(), "<=", kJetTol);
    const auto model = AmbientModel::round_sphere(n, std::sqrt(n * (n - 1) / kappa));
    c.add_claim("end_annulus_isometry_left", annulus_deviation(T.pieces.front().profile, model, delta), "<=", 1e-12);
    c.add_claim("end_annulus_isometry_right", annulus_deviation(reversed(T.pieces.back().profile), model, delta), "<=",
                1e-12);
    c.constants["diameter_C"] = kTunnelDiameterC;
    c.constants["volume_C"] = kTunnelVolumeC;
    c.constants["diameter_ratio"] = c.diameter_upper / (delta + d);
    c.constants["volume_ratio"] = c.volume / scale;
    return out;
}

PipelineResult certify_surgery(int p, int q, double delta, const std::string& body, int j, const PipelineOptions& opts) {
    AmbientModel amb;
    if (body == "product") {
        amb = AmbientModel::product(p, q, 1.0, 1.0);
    } else {
        require(body == "round" && p == 0, ErrorKind::InvalidArgument, "body must be 'product' or 'round' (p = 0)");
        amb = AmbientModel::round_sphere(q);
    }
    PipelineResult out{start("surgery", opts), perform_surgery(amb, p, q, delta, j)};
    auto& c = out.certificate;
    c.parameters = {{"p", p}, {"q", q}, {"delta", delta}, {"j", j}, {"kappa", amb.kappa()}};
    c.notes.push_back("body: " + amb.kind_name());
    record(c, out.assembly);
    floor_claim(c, amb.kappa() - delta);
    const double vM = model_volume(amb);
    c.constants["model_volume"] = vM;
    c.add_claim("volume_lower", c.volume, ">=", (1.0 - delta) * vM);
    c.add_claim("volume_upper", c.volume, "<=", (1.0 + delta) * vM);
    c.add_claim("interface_jets", out.assembly.max_mismatch(), "<=", kJetTol);
    return out;
}

// ---- pipelines

PipelineResult pipeline_mainA(const IngredientMetric& ingredient, const IngredientMetric& hemisphere, double D, int n,
                              int j, double delta, const PipelineOptions& opts) {
    require(n >= 3 && D >= 0.0 && j >= 1 && delta > 0.0, ErrorKind::ParameterOutOfRange, "need n >= 3, D >= 0, j >= 1");
    ingredient.validate();
    hemisphere.validate();
    require(ingredient.dim() == n && hemisphere.dim() == n, ErrorKind::InvalidArgument, "ingredient dimension != n");
    const double bound = n * (n - 1.0);
    require(ingredient.certified_R_floor > bound, ErrorKind::IngredientFloorTooLow,
            ingredient.name + " has floor " + std::to_string(ingredient.certified_R_floor) + " <= n(n-1)");
    require(hemisphere.certified_R_floor > bound, ErrorKind::IngredientFloorTooLow, "hemisphere floor <= n(n-1)");
    require(ingredient.model && hemisphere.model && ingredient.model->p == 0 && hemisphere.model->p == 0,
            ErrorKind::UnsupportedPiece, "the tunnel glues round-model ingredients");
    const auto& M = *ingredient.model;
    const auto& H = *hemisphere.model;

    const double kappa = std::min(ingredient.certified_R_floor, hemisphere.certified_R_floor);
    const int jj = raise_j(j, kappa - bound);
    const auto T = build_tunnel_between(M, H, delta, D, jj, kappa, opts.grid_density);

    PipelineResult out{start("main-a", opts), Assembly{}};
    auto& A = out.assembly;
    A.provenance = T.provenance;
    A.curve_C = T.curve_C;
    A.append(PieceRole::Body, "ingredient", body_complement(M, neck_start_radius(T.pieces.front().profile, M)));
    A.append_all(T);
    A.append(PieceRole::Body, "hemisphere", hemisphere_complement(H, neck_start_radius(reversed(T.pieces.back().profile), H)));

    auto& c = out.certificate;
    c.parameters = {{"D", D}, {"n", n}, {"j", j}, {"j_used", jj}, {"delta", delta}, {"kappa", kappa}};
    c.symbols = {{"D", D}, {"omega_n", unit_sphere_volume(n)}};
    record(c, A);
    floor_claim(c, bound);
    c.add_claim("ingredient_floor", ingredient.certified_R_floor, ">", bound);
    c.add_claim("hemisphere_floor", hemisphere.certified_R_floor, ">", bound);
    c.add_claim("tunnel_floor", T.global_min_R(), ">", kappa - 1.0 / jj);
    c.add_claim("diameter_lower_at_least_D", c.diameter_lower, ">=", D);
    c.add_claim("interface_jets", A.max_mismatch(), "<=", kJetTol);
    boundary_claims(c, std::get<WarpProfile>(A.pieces.back().profile).phi.back(), round_equator_jet(H));
    c.ingredients = {record_of(ingredient, trust_of(ingredient)), record_of(hemisphere, trust_of(hemisphere))};
    if (hemisphere.stand_in)
        c.notes.push_back("hemisphere is a round stand-in with R = n(n-1)(1 + 1e-3); not a counterexample metric; "
                          "its boundary annulus is never a gluing site");
    return out;
}

PipelineResult pipeline_corD(double D, int n, int j, double delta, const PipelineOptions& opts) {
    auto out = pipeline_mainA(IngredientMetric::round_sphere(n, 0.5), IngredientMetric::hemisphere_stand_in(n), D, n, j,
                              delta, opts);
    out.certificate.pipeline = "cor-d";
    return out;
}

PipelineResult pipeline_corT(int p, int q, int n, int j, double delta, const PipelineOptions& opts,
                             std::optional<double> radius, bool sweep) {
    require(p >= 1 && q >= 1 && p + q == n && n >= 3, ErrorKind::InvalidArgument, "need p, q >= 1 and p + q = n >= 3");
    const double bound = n * (n - 1.0);
    const double default_r = 1.0 / std::sqrt(2.0 * bound);
    double r = radius.value_or(default_r);
    // product metric: R adds over the factors; each S^k(rr), k >= 2, recomputed as a warped band
    auto product_floor = [&](double rr) {
        double total = 0.0;
        for (int k : {p, q}) {
            if (k < 2) continue;
            auto s = Profile1D::uniform_grid(0.5 * std::numbers::pi * rr, 257);
            for (auto& x : s) x += 0.25 * std::numbers::pi * rr;
            auto phi = Profile1D::from_function(std::move(s), [rr](double x) {
                return Jet{rr * std::sin(x / rr), std::cos(x / rr), -std::sin(x / rr) / rr};
            });
            const auto R = scalar_curvature_warped(WarpProfile{std::move(phi), k - 1});
            total += *std::min_element(R.begin(), R.end());
        }
        return total;
    };
    const double first = product_floor(r);
    std::vector<std::string> notes;
    if (!(first > bound)) {
        require(sweep, ErrorKind::FloorCheckFailed,
                "product floor " + std::to_string(first) + " <= n(n-1) at radius " + std::to_string(r));
        while (!(product_floor(r) > kStandInFactor * bound)) r *= 0.5;
        notes.push_back("requested radius fails the floor; swept down to radius " + std::to_string(r));
    }
    const double floor = product_floor(r);
    const double closed = (p * (p - 1.0) + q * (q - 1.0)) / (r * r);

    // the tunnel sees only B(2 delta); its neck is built in the round model with the product's floor
    auto local = IngredientMetric::round_sphere(n, std::sqrt(bound / floor));
    local.name = "S^" + std::to_string(p) + " x S^" + std::to_string(q) + " (local round model)";
    auto out = pipeline_mainA(local, IngredientMetric::hemisphere_stand_in(n), 0.0, n, j, delta, opts);
    auto& c = out.certificate;
    c.pipeline = "cor-t";
    c.parameters["p"] = p;
    c.parameters["q"] = q;
    c.parameters["radius"] = r;
    c.constants["product_floor"] = floor;
    c.constants["product_floor_closed_form"] = closed;
    c.constants["product_volume"] = unit_sphere_volume(p) * unit_sphere_volume(q) * std::pow(r, n);
    c.add_claim("product_floor", floor, ">", bound);
    c.add_claim("product_floor_matches_closed_form", std::abs(floor - closed), "<=", 1e-9 * closed);
    c.notes.push_back("ingredient is the product S^p x S^q (not the connected sum S^p # S^q)");
    c.notes.push_back("neck built in the round model with the product's scalar curvature; volume and diameter "
                      "refer to that model piece");
    for (auto& s : notes) c.notes.push_back(std::move(s));
    return out;
}

PipelineResult pipeline_corV(double V, int n, int j, double delta, const PipelineOptions& opts) {
    require(V > 0.0 && n >= 3 && j >= 1 && delta > 0.0, ErrorKind::ParameterOutOfRange, "need V > 0, n >= 3, j >= 1");
    const double omega = unit_sphere_volume(n);
    int m = 2;
    while (std::floor(m / 2) * omega <= V) ++m;

    const auto S = AmbientModel::round_sphere(n);
    const auto H = IngredientMetric::hemisphere_stand_in(n);
    const double kappa = S.kappa();
    const auto link = build_tunnel_between(S, S, delta, 0.0, j, kappa, opts.grid_density);
    const auto last = build_tunnel_between(S, *H.model, delta, 0.0, j, kappa, opts.grid_density);
    const double r0 = neck_start_radius(link.pieces.front().profile, S);
    const double rH = neck_start_radius(reversed(last.pieces.back().profile), *H.model);

    PipelineResult out{start("cor-v", opts), Assembly{}};
    auto& A = out.assembly;
    A.append(PieceRole::Body, "sphere-1", body_complement(S, r0));
    double tunnel_volume = 0.0;
    for (int i = 2; i <= m; ++i) {
        A.append_all(link);
        tunnel_volume += link.total_volume();
        A.append(PieceRole::Body, "sphere-" + std::to_string(i), model_band(S, r0, S.max_radius() - r0));
    }
    A.append_all(last);
    tunnel_volume += last.total_volume();
    A.append(PieceRole::Body, "hemisphere", hemisphere_complement(*H.model, rH));
    const int k = m;  // gluings
    A.provenance = Provenance{delta, 0.0, j, kappa, n, 0, n, kappa - static_cast<double>(k) / j};
    A.curve_C = std::max(link.curve_C, last.curve_C);

    auto& c = out.certificate;
    c.parameters = {{"V", V}, {"n", n}, {"j", j}, {"delta", delta}, {"kappa", kappa}};
    c.symbols = {{"V", V}, {"omega_n", omega}, {"m", m}};
    record(c, A);
    floor_claim(c, kappa - static_cast<double>(k) / j);
    c.add_claim("per_tunnel_floor", std::min(link.global_min_R(), last.global_min_R()), ">", kappa - 1.0 / j);
    c.add_claim("sphere_count", std::floor(m / 2) * omega, ">", V);
    c.add_claim("volume_at_least_V", c.volume, ">=", V);
    const double independent = m * omega - (2 * m - 1) * ball_volume(S, r0) + tunnel_volume +
                               (H.volume - ball_volume(*H.model, rH));
    c.constants["volume_independent"] = independent;
    c.add_claim("volume_additivity", std::abs(c.volume - independent), "<=", 1e-6 * c.volume);
    c.add_claim("interface_jets", A.max_mismatch(), "<=", kJetTol);
    boundary_claims(c, std::get<WarpProfile>(A.pieces.back().profile).phi.back(), round_equator_jet(*H.model));
    c.ingredients = {record_of(IngredientMetric::round_sphere(n, 1.0), "VERIFIED"), record_of(H, trust_of(H))};
    c.notes.push_back("hemisphere is a round stand-in with R = n(n-1)(1 + 1e-3); not a counterexample metric");
    return out;
}

PipelineResult verify_mainB_budget(const std::optional<IngredientMetric>& hemisphere, double eps, double D, int n,
                                   double delta, int j, const PipelineOptions& opts) {
    require(hemisphere.has_value(), ErrorKind::MissingIngredient, "the volume chain needs an external hemisphere");
    require(eps > 0.0 && delta > 0.0 && 2.0 * delta < eps && D >= 0.0 && j >= 1 && n >= 3,
            ErrorKind::ParameterOutOfRange, "need 0 < 2 delta < eps, D >= 0, j >= 1, n >= 3");
    const auto& Hg = *hemisphere;
    Hg.validate();
    require(Hg.dim() == n, ErrorKind::InvalidArgument, "hemisphere dimension != n");
    const double bound = n * (n - 1.0);
    const double omega = unit_sphere_volume(n);
    const double eps_n = std::pow(eps, n);
    require(std::abs(Hg.volume - 0.5 * omega) < omega * eps_n, ErrorKind::ParameterOutOfRange,
            "hemisphere volume is not within omega_n eps^n of half the sphere");
    require(Hg.certified_R_floor >= bound, ErrorKind::IngredientFloorTooLow, "hemisphere floor < n(n-1)");

    // pole-to-equator profile and the round model it agrees with near the pole
    WarpProfile hp;
    AmbientModel local;
    if (Hg.model) {
        local = *Hg.model;
        const double rho = 1.0 / std::sqrt(local.curvature);
        auto phi = Profile1D::from_function(Profile1D::uniform_grid(0.5 * std::numbers::pi * rho, 2049), [rho](double s) {
                       return Jet{rho * std::sin(s / rho), std::cos(s / rho), -std::sin(s / rho) / rho};
                   }).with_end_third_derivatives(-1.0 / (rho * rho), 0.0);
        hp = WarpProfile{std::move(phi), n - 1};
    } else {
        require(std::holds_alternative<WarpProfile>(*Hg.profile), ErrorKind::UnsupportedPiece,
                "hemisphere must be a warped profile");
        hp = std::get<WarpProfile>(*Hg.profile);
        require(hp.pole_at_front(), ErrorKind::UnsupportedPiece, "hemisphere profile must start at its pole");
        const double K = -hp.phi.end_third_derivative(false);
        require(K > 0.0, ErrorKind::UnsupportedPiece, "hemisphere is not positively curved at its pole");
        local = AmbientModel::round_sphere(n, 1.0 / std::sqrt(K));
        for (std::size_t i = 0; i < hp.phi.size() && hp.phi.nodes()[i] <= 2.0 * delta; ++i)
            require(std::abs(hp.phi.jet(i).f - local.sn(hp.phi.nodes()[i])) <= 1e-9, ErrorKind::UnsupportedPiece,
                    "hemisphere is not round on the gluing ball");
    }
    const double eta = 10.0 * eps;
    const auto small = AmbientModel::round_sphere(n, eta);
    const double kappa = std::min(Hg.certified_R_floor, small.kappa());
    const auto T = build_tunnel_between(local, small, delta, D, j, kappa, opts.grid_density);
    const double rL = neck_start_radius(T.pieces.front().profile, local);
    const double rR = neck_start_radius(reversed(T.pieces.back().profile), small);

    PipelineResult out{start("main-b-budget", opts), Assembly{}};
    auto& A = out.assembly;
    A.provenance = T.provenance;
    A.curve_C = T.curve_C;
    A.append(PieceRole::Body, "hemisphere", reversed(WarpProfile{trimmed(hp.phi, rL), n - 1}));
    A.append_all(T);
    A.append(PieceRole::Body, "small-sphere", reversed(body_complement(small, rR)));

    auto& c = out.certificate;
    c.parameters = {{"eps", eps}, {"D", D}, {"n", n}, {"delta", delta}, {"j", j}, {"eta", eta}};
    c.symbols = {{"D", D}, {"omega_n", omega}, {"eps", eps}};
    record(c, A);
    floor_claim(c, kappa - 1.0 / j);

    const double Vh = 0.5 * omega;
    const double VhB = A.pieces.front().volume;
    const double Vs = A.pieces.back().volume;
    const double VT = T.total_volume();
    const double vol = c.volume;
    const double C = (omega * std::pow(eta, n) + VT) / std::pow(eps, n - 1);
    c.add_claim("chain_1_hemisphere_minus_ball", Vh, "<=", VhB + 2.0 * omega * eps_n);
    c.add_claim("chain_2_tunnel_and_sphere_room", VhB + 2.0 * omega * eps_n, "<=",
                VhB + VT + (std::pow(10.0, n) - 1.0) * omega * eps_n);
    c.add_claim("chain_3_below_total", VhB + VT + (std::pow(10.0, n) - 1.0) * omega * eps_n, "<=", vol);
    c.add_claim("chain_4_additivity", std::abs(vol - (VhB + VT + Vs)), "<=", 1e-9 * vol);
    c.add_claim("chain_5_excess_bound", vol, "<=", Vh + C * std::pow(eps, n - 1));
    c.add_claim("diameter_above_D", c.diameter_lower, ">", D);
    c.add_claim("interface_jets", A.max_mismatch(), "<=", kJetTol);
    boundary_claims(c, std::get<WarpProfile>(A.pieces.front().profile).phi.front(), hp.phi.back());
    c.constants["C"] = C;
    c.constants["volume_excess"] = vol - Vh;
    c.constants["small_sphere_volume"] = Vs;
    c.constants["tunnel_volume"] = VT;
    c.ingredients = {record_of(Hg, "EXTERNAL-TRUSTED")};
    c.notes.push_back("hemisphere ingredient is EXTERNAL-TRUSTED; its strict R > n(n-1) and boundary mean curvature "
                      "are not rechecked here");
    if (Hg.stand_in) c.notes.push_back("hemisphere is the idealized unit round stand-in");
    return out;
}

}  // namespace neck
