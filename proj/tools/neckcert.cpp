#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "neck/certify.hpp"
#include "neck/error.hpp"
#include "neck/io.hpp"

using namespace neck;

namespace {

struct Common {
    std::string out;
    std::string profiles_dir;
};

int finish(const PipelineResult& r, const Common& io) {
    const auto& c = r.certificate;
    std::printf("%s: min R %.9g (floor %.9g), volume %.9g, diameter [%.6g, %.6g]\n", c.pipeline.c_str(),
                c.global_min_R, c.floor, c.volume, c.diameter_lower, c.diameter_upper);
    for (const auto& cl : c.claims)
        std::printf("  %-13s %-36s %.6e %s %.6e\n", to_string(cl.status).c_str(), cl.name.c_str(), cl.lhs,
                    cl.relation.c_str(), cl.rhs);
    for (const auto& n : c.notes) std::printf("  note: %s\n", n.c_str());
    if (!io.out.empty()) {
        emit_certificate(c, io.out);
        std::printf("certificate written to %s\n", io.out.c_str());
    }
    if (!io.profiles_dir.empty()) {
        export_assembly(r.assembly, io.profiles_dir, io.out);
        std::printf("profiles written to %s\n", io.profiles_dir.c_str());
    }
    return c.all_pass() ? 0 : 1;
}

void add_outputs(CLI::App* sub, Common& io) {
    sub->add_option("--out", io.out, "certificate JSON path");
    sub->add_option("--profiles-dir", io.profiles_dir, "directory for assembly.json and per-piece CSV");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"neckcert: scalar-curvature-controlled necks with numerical certificates"};
    app.set_config("--config", "", "key = value config file; command-line flags win");
    app.require_subcommand(1);

    PipelineOptions opts;
    app.add_option("--grid-density", opts.grid_density, "nodes per unit length")->capture_default_str();
    app.add_option("--seed", opts.seed, "recorded in the certificate")->capture_default_str();
    app.add_option("--tolerance", opts.tolerance, "strict claims with smaller margin are INCONCLUSIVE")
        ->capture_default_str();

    Common io;

    int n = 3, j = 100;
    double kappa = 6.0, delta = 0.1, length = 2.0;
    auto* tunnel = app.add_subcommand("build-tunnel", "tunnel in the round model with scalar curvature kappa");
    tunnel->add_option("--n", n)->capture_default_str();
    tunnel->add_option("--kappa", kappa)->capture_default_str();
    tunnel->add_option("--delta", delta)->capture_default_str();
    tunnel->add_option("--length", length, "straight segment length d")->capture_default_str();
    tunnel->add_option("--j", j)->capture_default_str();
    add_outputs(tunnel, io);

    int p = 1, q = 3, sj = 0;
    double sdelta = 0.05;
    std::string body = "product";
    auto* surgery = app.add_subcommand("surgery", "codimension-q surgery along S^p");
    surgery->add_option("--p", p)->capture_default_str();
    surgery->add_option("--q", q)->capture_default_str();
    surgery->add_option("--delta", sdelta)->capture_default_str();
    surgery->add_option("--body", body, "product | round")->capture_default_str();
    surgery->add_option("--j", sj, "optional extra budget 1/(2j)")->capture_default_str();
    add_outputs(surgery, io);

    std::string name;
    double D = 10.0, V = 0.0, eps = 0.05, pdelta = 0.1, radius = 0.5;
    int pj = 1000, pn = 3, pp = 1, pq = 2;
    std::optional<double> corT_radius;
    bool no_sweep = false, stand_in = false;
    std::string hemisphere_file;
    auto* pipe = app.add_subcommand("pipeline", "assembly pipelines with certificates");
    pipe->add_option("name", name, "main-a | cor-d | cor-t | cor-v | main-b-budget")
        ->required()
        ->check(CLI::IsMember({"main-a", "cor-d", "cor-t", "cor-v", "main-b-budget"}));
    pipe->add_option("--D", D, "diameter target")->capture_default_str();
    pipe->add_option("--V", V, "volume target (cor-v); default 3 omega_n");
    pipe->add_option("--n", pn)->capture_default_str();
    pipe->add_option("--j", pj)->capture_default_str();
    pipe->add_option("--delta", pdelta, "tunnel scale (main-b-budget default eps/4)");
    pipe->add_option("--p", pp)->capture_default_str();
    pipe->add_option("--q", pq)->capture_default_str();
    pipe->add_option("--radius", radius, "main-a ingredient sphere radius")->capture_default_str();
    pipe->add_option("--product-radius", corT_radius, "cor-t factor radius (default 1/sqrt(2n(n-1)))");
    pipe->add_flag("--no-sweep", no_sweep, "cor-t: fail instead of sweeping radii");
    pipe->add_option("--eps", eps)->capture_default_str();
    pipe->add_option("--hemisphere", hemisphere_file, "external hemisphere ingredient JSON (main-b-budget)");
    pipe->add_flag("--stand-in", stand_in, "main-b-budget: use the unit round hemisphere");
    add_outputs(pipe, io);

    std::string cert_path;
    auto* recheck = app.add_subcommand("recheck", "re-evaluate every claim of a certificate");
    recheck->add_option("certificate", cert_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*tunnel) return finish(certify_tunnel(n, kappa, delta, length, j, opts), io);
        if (*surgery) return finish(certify_surgery(p, q, sdelta, body, sj, opts), io);
        if (*pipe) {
            if (name == "main-a")
                return finish(pipeline_mainA(IngredientMetric::round_sphere(pn, radius),
                                             IngredientMetric::hemisphere_stand_in(pn), D, pn, pj, pdelta, opts),
                              io);
            if (name == "cor-d") return finish(pipeline_corD(D, pn, pj, pdelta, opts), io);
            if (name == "cor-t") {
                if (pp + pq != pn) pn = pp + pq;
                return finish(pipeline_corT(pp, pq, pn, pj, pdelta, opts, corT_radius, !no_sweep), io);
            }
            if (name == "cor-v") {
                const double target = pipe->count("--V") ? V : 3.0 * unit_sphere_volume(pn);
                return finish(pipeline_corV(target, pn, pj, pdelta, opts), io);
            }
            std::optional<IngredientMetric> H;
            if (!hemisphere_file.empty()) H = IngredientMetric::from_file(hemisphere_file);
            else if (stand_in) H = IngredientMetric::unit_hemisphere_profile(pn);
            const double bd = pipe->count("--delta") ? pdelta : 0.25 * eps;
            return finish(verify_mainB_budget(H, eps, D, pn, bd, pipe->count("--j") ? pj : 100, opts), io);
        }
        const auto r = recheck_certificate(cert_path);
        const auto cert = certificate_from_json(read_text(cert_path));
        std::printf("%s: %d claims rechecked, checksum %s\n", cert_path.c_str(), r.claims_checked,
                    r.checksum_ok ? "ok" : "MISMATCH");
        for (const auto& pr : r.problems) std::printf("  problem: %s\n", pr.c_str());
        const bool good = r.ok && cert.all_pass();
        std::printf("%s\n", good ? "PASS" : "FAIL");
        return good ? 0 : 1;
    } catch (const GeometryError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
