#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <optional>
#include <random>

#include <json.hpp>

#include "generators.hpp"
#include "neck/certify.hpp"
#include "neck/error.hpp"
#include "neck/io.hpp"

using namespace neck;

namespace {

std::optional<ErrorKind> kind_of(auto&& fn) {
    try {
        fn();
    } catch (const GeometryError& e) {
        return e.kind();
    }
    return std::nullopt;
}

double jet_gap(const Profile1D& x, const Profile1D& y) {
    REQUIRE(x.size() == y.size());
    double g = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        g = std::max(g, std::abs(x.nodes()[i] - y.nodes()[i]));
        g = std::max({g, std::abs(x.jet(i).f - y.jet(i).f), std::abs(x.jet(i).d1 - y.jet(i).d1),
                      std::abs(x.jet(i).d2 - y.jet(i).d2)});
    }
    return g;
}

const double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("claim evaluation is strict with an inconclusive band") {
    CHECK(evaluate_claim(">", 6.1, 6.0, 1e-9) == ClaimStatus::Pass);
    CHECK(evaluate_claim(">", 6.0 + 1e-10, 6.0, 1e-9) == ClaimStatus::Inconclusive);
    CHECK(evaluate_claim(">", 6.0, 6.0, 1e-9) == ClaimStatus::Fail);
    CHECK(evaluate_claim("<", 1.0, 2.0, 1e-9) == ClaimStatus::Pass);
    CHECK(evaluate_claim(">=", 2.0, 2.0, 1e-9) == ClaimStatus::Pass);
    CHECK(evaluate_claim("<=", 2.0 + 1e-15, 2.0, 1e-9) == ClaimStatus::Fail);
    CHECK(evaluate_claim(">", NAN, 0.0, 1e-9) == ClaimStatus::Fail);
    CHECK(kind_of([] { evaluate_claim("=", 1.0, 1.0, 0.0); }) == ErrorKind::SchemaViolation);

    Certificate c;
    CHECK_FALSE(c.all_pass());  // nothing passes by default
    c.add_claim("x", 1.0, ">", 0.0);
    CHECK(c.all_pass());
    c.add_claim("y", 1.0, ">", 1.0 - 1e-12);
    CHECK_FALSE(c.all_pass());
    CHECK(c.find("y")->status == ClaimStatus::Inconclusive);
}

TEST_CASE("profile JSON and CSV round trip") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        const auto w = testing::sampled_profile(testing::RandomWarp(rng), 2 + 2 * (t % 2), 1.0, 257);
        for (const auto& back : {profile_from_json(profile_to_json(w)), profile_from_csv(profile_to_csv(w))}) {
            const auto& r = std::get<WarpProfile>(back);
            CHECK(r.m == w.m);
            CHECK(jet_gap(r.phi, w.phi) <= 1e-12);
            CHECK(std::abs(r.phi.end_third_derivative(true) - w.phi.end_third_derivative(true)) <= 1e-12);
        }
    }
    const auto N = perform_surgery(AmbientModel::product(1, 3, 1.0, 1.0), 1, 3, 0.05);
    const auto& collar = N.pieces[2].profile;
    for (const auto& back : {profile_from_json(profile_to_json(collar)), profile_from_csv(profile_to_csv(collar))}) {
        const auto& d = std::get<DoublyWarpProfile>(back);
        const auto& e = std::get<DoublyWarpProfile>(collar);
        CHECK(d.p == 1);
        CHECK(d.q == 3);
        CHECK(jet_gap(d.a, e.a) <= 1e-12);
        CHECK(jet_gap(d.b, e.b) <= 1e-12);
    }
    CHECK(kind_of([] { profile_from_json("{\"kind\":\"blob\"}"); }) == ErrorKind::SchemaViolation);
    CHECK(kind_of([] { profile_from_csv("s,phi\n1,2\n"); }) == ErrorKind::SchemaViolation);
}

TEST_CASE("certificates are deterministic and round trip") {
    PipelineOptions o;
    o.seed = 42;
    const auto a = certificate_to_json(certify_tunnel(3, 6.0, 0.1, 1.0, 100, o).certificate);
    const auto b = certificate_to_json(certify_tunnel(3, 6.0, 0.1, 1.0, 100, o).certificate);
    CHECK(a == b);
    const auto c = certificate_from_json(a);
    const auto orig = certify_tunnel(3, 6.0, 0.1, 1.0, 100, o).certificate;
    CHECK(c.seed == 42);
    CHECK(c.claims.size() == orig.claims.size());
    for (std::size_t i = 0; i < c.claims.size(); ++i) {
        CHECK(c.claims[i].lhs == doctest::Approx(orig.claims[i].lhs).epsilon(1e-12));
        CHECK(c.claims[i].rhs == doctest::Approx(orig.claims[i].rhs).epsilon(1e-12));
    }
    CHECK(c.volume == doctest::Approx(orig.volume).epsilon(1e-12));
    CHECK(certificate_to_json(c) == a);
    const auto r = recheck_certificate_text(a);
    CHECK(r.ok);
    CHECK(r.checksum_ok);

    auto tampered = a;
    const auto at = tampered.find("\"pass\":true");
    REQUIRE(at != std::string::npos);
    tampered.replace(at, 11, "\"pass\":false");
    CHECK_FALSE(recheck_certificate_text(tampered).ok);
    CHECK(kind_of([] { recheck_certificate_text("not json"); }) == ErrorKind::SchemaViolation);
    CHECK(kind_of([] { recheck_certificate_text("{\"checksum\":\"x\"}"); }) == ErrorKind::SchemaViolation);
}

TEST_CASE("single-field tampering is always detected") {
    const auto text = certificate_to_json(pipeline_corD(10.0, 3, 1000, 0.1).certificate);
    const auto base = nlohmann::json::parse(text);
    std::vector<nlohmann::json::json_pointer> leaves;
    const auto flat = base.flatten();
    for (const auto& it : flat.items()) leaves.emplace_back(it.key());
    std::mt19937_64 rng(17);
    for (int t = 0; t < 100; ++t) {
        auto j = base;
        const auto& ptr = leaves[rng() % leaves.size()];
        auto& v = j[ptr];
        if (v.is_boolean()) v = !v.get<bool>();
        else if (v.is_number_float()) v = v.get<double>() * 1.001 + 1e-6;
        else if (v.is_number()) v = v.get<std::int64_t>() + 1;
        else if (v.is_string()) v = v.get<std::string>() + "x";
        std::string dumped = j.dump();
        bool caught = false;
        try {
            caught = !recheck_certificate_text(dumped).ok;
        } catch (const GeometryError& e) {
            caught = e.kind() == ErrorKind::SchemaViolation;
        }
        CHECK_MESSAGE(caught, ptr.to_string());
    }
}

TEST_CASE("corD and mainA") {
    const auto r = pipeline_corD(10.0, 3, 1000, 0.1);
    const auto& c = r.certificate;
    CHECK(c.all_pass());
    CHECK(c.global_min_R > 6.0);
    CHECK(c.diameter_lower >= 10.0);
    CHECK(c.find("boundary_totally_geodesic")->pass);
    CHECK(recheck_certificate_text(certificate_to_json(c)).ok);

    const auto zero = pipeline_mainA(IngredientMetric::round_sphere(3, 0.5), IngredientMetric::hemisphere_stand_in(3),
                                     0.0, 3, 1000, 0.1);
    CHECK(zero.certificate.all_pass());

    // R = 6 exactly is not strictly above n(n-1)
    CHECK(kind_of([] {
              pipeline_mainA(IngredientMetric::round_sphere(3, 1.0), IngredientMetric::hemisphere_stand_in(3), 1.0, 3,
                             100, 0.1);
          }) == ErrorKind::IngredientFloorTooLow);
    // a too-small j is raised so the tunnel floor still clears n(n-1)
    const auto low = pipeline_corD(2.0, 3, 10, 0.1);
    CHECK(low.certificate.parameters.at("j_used") >= 334);
    CHECK(low.certificate.all_pass());

    auto bad = IngredientMetric::round_sphere(3, 0.5);
    bad.certified_R_floor = 25.0;
    CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::FloorCheckFailed);
}

TEST_CASE("corT products") {
    const auto r = pipeline_corT(1, 2, 3, 1000, 0.05);
    CHECK(r.certificate.all_pass());
    CHECK(r.certificate.constants.at("product_floor") == doctest::Approx(24.0).epsilon(1e-9));
    const auto sym = pipeline_corT(2, 2, 4, 1000, 0.05);
    // 2n(n-1) (p(p-1) + q(q-1)) with p = q = 2, n = 4
    CHECK(sym.certificate.constants.at("product_floor") == doctest::Approx(96.0).epsilon(1e-9));
    CHECK(kind_of([] { pipeline_corT(1, 2, 3, 1000, 0.05, {}, 2.0, false); }) == ErrorKind::FloorCheckFailed);
    const auto swept = pipeline_corT(1, 2, 3, 1000, 0.05, {}, 2.0, true);
    CHECK(swept.certificate.parameters.at("radius") < 2.0);
    CHECK(swept.certificate.all_pass());
    CHECK(kind_of([] { pipeline_corT(1, 1, 3, 100, 0.05); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("corV chains") {
    const double V = 6.0 * kPi * kPi;
    const auto r = pipeline_corV(V, 3, 100, 0.1);
    const auto& c = r.certificate;
    CHECK(c.symbols.at("m") == 8.0);
    CHECK(c.volume >= V);
    CHECK(c.global_min_R > 6.0 - 8.0 / 100);
    CHECK(c.find("volume_additivity")->pass);
    CHECK(c.all_pass());
    const auto small = pipeline_corV(1.0, 3, 100, 0.1);
    CHECK(small.certificate.symbols.at("m") == 2.0);
    CHECK(small.certificate.all_pass());
}

TEST_CASE("volume budget chain") {
    CHECK(kind_of([] { verify_mainB_budget(std::nullopt, 0.05, 10.0, 3, 0.0125); }) == ErrorKind::MissingIngredient);
    const auto H = IngredientMetric::unit_hemisphere_profile(3);
    const auto r = verify_mainB_budget(H, 0.05, 10.0, 3, 0.0125);
    CHECK(r.certificate.all_pass());
    CHECK(r.certificate.ingredients.at(0).trust == "EXTERNAL-TRUSTED");
    const auto h = verify_mainB_budget(H, 0.025, 10.0, 3, 0.00625);
    CHECK(h.certificate.all_pass());
    const double e = std::log2(r.certificate.constants.at("volume_excess") / h.certificate.constants.at("volume_excess"));
    MESSAGE("excess exponent " << e);
    CHECK(e >= 3 - 1 - 0.3);

    // external ingredient through a file
    const auto path = std::filesystem::temp_directory_path() / "neck_hemisphere_test.json";
    write_text(path, H.to_json());
    const auto ext = IngredientMetric::from_file(path);
    CHECK(ext.provenance == "external:neck_hemisphere_test.json");
    CHECK(verify_mainB_budget(ext, 0.05, 10.0, 3, 0.0125).certificate.all_pass());
    std::filesystem::remove(path);
    CHECK(kind_of([&] { verify_mainB_budget(H, 0.05, 10.0, 3, 0.05); }) == ErrorKind::ParameterOutOfRange);
}

TEST_CASE("surgery and tunnel certificates") {
    const auto s = certify_surgery(1, 3, 0.05, "product");
    CHECK(s.certificate.all_pass());
    const auto s0 = certify_surgery(0, 3, 0.05, "round");
    CHECK(s0.certificate.all_pass());
    CHECK(kind_of([] { certify_surgery(1, 2, 0.05, "product"); }) == ErrorKind::CodimensionTooSmall);
    const auto t = certify_tunnel(3, 6.0, 0.1, 2.0, 100);
    CHECK(t.certificate.all_pass());
    CHECK(t.certificate.find("end_annulus_isometry_left")->lhs <= 1e-12);

    const auto dir = std::filesystem::temp_directory_path() / "neck_export_test";
    export_assembly(t.assembly, dir, "cert.json");
    CHECK(std::filesystem::exists(dir / "assembly.json"));
    const auto back = profile_from_csv(read_text(dir / "piece_00_neck-left.csv"));
    CHECK(jet_gap(std::get<WarpProfile>(back).phi, std::get<WarpProfile>(t.assembly.pieces[0].profile).phi) == 0.0);
    std::filesystem::remove_all(dir);
}
