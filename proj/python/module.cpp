#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "neck/assembly.hpp"
#include "neck/bending.hpp"
#include "neck/certify.hpp"
#include "neck/error.hpp"
#include "neck/warped.hpp"

namespace py = pybind11;
using namespace neck;

namespace {

WarpProfile warp_from(std::vector<double> s, const std::vector<double>& phi, int m) {
    require(s.size() == phi.size(), ErrorKind::InvalidArgument, "s and phi differ in length");
    return WarpProfile{Profile1D::from_samples(std::move(s), phi), m};
}

AmbientModel ambient_for(int p, int q, double rho) {
    return p == 0 ? AmbientModel::round_sphere(q) : AmbientModel::product(p, q, rho);
}

py::dict summary(const Assembly& A) {
    py::list pieces;
    for (const auto& pc : A.pieces) {
        py::dict d;
        d["role"] = to_string(pc.role);
        d["label"] = pc.label;
        d["length"] = length(pc.profile);
        d["min_R"] = pc.min_R;
        d["volume"] = pc.volume;
        pieces.append(d);
    }
    const auto D = diameter(A);
    py::dict out;
    out["pieces"] = pieces;
    out["min_R"] = A.global_min_R();
    out["volume"] = A.total_volume();
    out["diameter_lower"] = D.lower;
    out["diameter_upper"] = D.upper;
    out["max_mismatch"] = A.max_mismatch();
    out["floor"] = A.provenance.floor;
    return out;
}

PipelineOptions options(double density, std::uint64_t seed) {
    PipelineOptions o;
    o.grid_density = density;
    o.seed = seed;
    return o;
}

}  // namespace

PYBIND11_MODULE(neckgeom, mod) {
    mod.doc() = "scalar-curvature-controlled necks, surgery and certificates";

    static py::exception<GeometryError> geometry_error(mod, "GeometryError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const GeometryError& e) {
            py::object err = geometry_error;
            py::object inst = err(e.what());
            inst.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(geometry_error.ptr(), inst.ptr());
        }
    });

    mod.def("unit_sphere_volume", &unit_sphere_volume, py::arg("k"));

    mod.def(
        "scalar_curvature_warped",
        [](std::vector<double> s, const std::vector<double>& phi, int m) {
            return scalar_curvature_warped(warp_from(std::move(s), phi, m));
        },
        py::arg("s"), py::arg("phi"), py::arg("m"), "R of ds^2 + phi(s)^2 g_{S^m} at the nodes (spline through samples)");

    mod.def(
        "scalar_curvature_doubly_warped",
        [](std::vector<double> s, const std::vector<double>& a, const std::vector<double>& b, int p, int q) {
            require(s.size() == a.size() && s.size() == b.size(), ErrorKind::InvalidArgument, "length mismatch");
            auto sa = s;
            DoublyWarpProfile d{Profile1D::from_samples(std::move(sa), a), Profile1D::from_samples(std::move(s), b), p, q};
            return scalar_curvature_doubly_warped(d);
        },
        py::arg("s"), py::arg("a"), py::arg("b"), py::arg("p"), py::arg("q"));

    mod.def(
        "warped_volume",
        [](std::vector<double> s, const std::vector<double>& phi, int m) {
            return volume(warp_from(std::move(s), phi, m)).value;
        },
        py::arg("s"), py::arg("phi"), py::arg("m"));

    mod.def(
        "design_bending_curve",
        [](double kappa, double delta, int q, int p, double rho) {
            CurveDesignParams P;
            P.kappa = kappa;
            P.delta = delta;
            P.p = p;
            P.q = q;
            P.n = p + q;
            P.ambient = ambient_for(p, q, rho);
            const auto d = design_bending_curve(P);
            py::dict out;
            out["s"] = d.curve.s;
            out["theta"] = d.curve.theta;
            out["k"] = d.curve.k;
            out["t"] = d.curve.t;
            out["r"] = d.curve.r;
            out["achieved_C"] = d.achieved_C;
            out["min_R"] = d.min_R;
            out["min_R_gauss"] = d.min_R_gauss;
            out["floor"] = d.floor;
            return out;
        },
        py::arg("kappa"), py::arg("delta"), py::arg("q") = 3, py::arg("p") = 0, py::arg("rho") = 1.0);

    mod.def(
        "build_tunnel",
        [](double delta, double d, int j, double kappa, int n) { return summary(build_tunnel(delta, d, j, kappa, n)); },
        py::arg("delta"), py::arg("d"), py::arg("j"), py::arg("kappa") = 6.0, py::arg("n") = 3);

    mod.def(
        "perform_surgery",
        [](int p, int q, double delta, int j) { return summary(perform_surgery(ambient_for(p, q, 1.0), p, q, delta, j)); },
        py::arg("p"), py::arg("q"), py::arg("delta"), py::arg("j") = 0);

    // certificate producers return canonical JSON text
    mod.def(
        "certify_tunnel",
        [](int n, double kappa, double delta, double d, int j, double density, std::uint64_t seed) {
            return certificate_to_json(certify_tunnel(n, kappa, delta, d, j, options(density, seed)).certificate);
        },
        py::arg("n") = 3, py::arg("kappa") = 6.0, py::arg("delta") = 0.1, py::arg("d") = 2.0, py::arg("j") = 100,
        py::arg("grid_density") = 2048.0, py::arg("seed") = 0);

    mod.def(
        "certify_surgery",
        [](int p, int q, double delta, const std::string& body, int j, double density, std::uint64_t seed) {
            return certificate_to_json(certify_surgery(p, q, delta, body, j, options(density, seed)).certificate);
        },
        py::arg("p") = 1, py::arg("q") = 3, py::arg("delta") = 0.05, py::arg("body") = "product", py::arg("j") = 0,
        py::arg("grid_density") = 2048.0, py::arg("seed") = 0);

    mod.def(
        "pipeline_cor_d",
        [](double D, int n, int j, double delta, double density, std::uint64_t seed) {
            return certificate_to_json(pipeline_corD(D, n, j, delta, options(density, seed)).certificate);
        },
        py::arg("D") = 10.0, py::arg("n") = 3, py::arg("j") = 1000, py::arg("delta") = 0.1,
        py::arg("grid_density") = 2048.0, py::arg("seed") = 0);

    mod.def(
        "pipeline_cor_t",
        [](int p, int q, int j, double delta, std::optional<double> radius, bool sweep, double density,
           std::uint64_t seed) {
            return certificate_to_json(
                pipeline_corT(p, q, p + q, j, delta, options(density, seed), radius, sweep).certificate);
        },
        py::arg("p") = 1, py::arg("q") = 2, py::arg("j") = 1000, py::arg("delta") = 0.1,
        py::arg("radius") = py::none(), py::arg("sweep") = true, py::arg("grid_density") = 2048.0,
        py::arg("seed") = 0);

    mod.def(
        "pipeline_cor_v",
        [](double V, int n, int j, double delta, double density, std::uint64_t seed) {
            return certificate_to_json(pipeline_corV(V, n, j, delta, options(density, seed)).certificate);
        },
        py::arg("V"), py::arg("n") = 3, py::arg("j") = 1000, py::arg("delta") = 0.1,
        py::arg("grid_density") = 2048.0, py::arg("seed") = 0);

    mod.def(
        "main_b_budget",
        [](double eps, double D, int n, std::optional<double> delta, std::optional<std::string> hemisphere,
           bool stand_in, int j) {
            std::optional<IngredientMetric> H;
            if (hemisphere) H = IngredientMetric::from_file(*hemisphere);
            else if (stand_in) H = IngredientMetric::unit_hemisphere_profile(n);
            return certificate_to_json(verify_mainB_budget(H, eps, D, n, delta.value_or(0.25 * eps), j).certificate);
        },
        py::arg("eps") = 0.05, py::arg("D") = 10.0, py::arg("n") = 3, py::arg("delta") = py::none(),
        py::arg("hemisphere") = py::none(), py::arg("stand_in") = false, py::arg("j") = 100);

    mod.def(
        "recheck",
        [](const std::string& text) {
            const auto r = recheck_certificate_text(text);
            py::dict out;
            out["ok"] = r.ok;
            out["checksum_ok"] = r.checksum_ok;
            out["claims_checked"] = r.claims_checked;
            out["problems"] = r.problems;
            return out;
        },
        py::arg("certificate_json"));
}
