#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "neck/certify.hpp"
#include "neck/error.hpp"
#include "neck/io.hpp"

namespace neck {

using nlohmann::json;

namespace {

constexpr const char* kSchema = "neckcert/1";

json num(double x) {
    if (std::isfinite(x)) return x;
    return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

double num_of(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
        if (s == "nan") return NAN;
    }
    fail(ErrorKind::SchemaViolation, "expected a number, got " + j.dump());
}

json num_map(const std::map<std::string, double>& m) {
    json j = json::object();
    for (const auto& [k, v] : m) j[k] = num(v);
    return j;
}

std::map<std::string, double> num_map_of(const json& j) {
    std::map<std::string, double> out;
    for (const auto& [k, v] : j.items()) out[k] = num_of(v);
    return out;
}

// keys come out sorted (std::map-backed object); floats fixed at %.12e
void dump_canonical(const json& j, std::string& out) {
    char buf[64];
    switch (j.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                if (!first) out += ',';
                first = false;
                out += json(k).dump();
                out += ':';
                dump_canonical(v, out);
            }
            out += '}';
            break;
        }
        case json::value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ',';
                dump_canonical(j[i], out);
            }
            out += ']';
            break;
        }
        case json::value_t::number_float:
            std::snprintf(buf, sizeof buf, "%.12e", j.get<double>());
            out += buf;
            break;
        default:
            out += j.dump();
    }
}

std::string canonical(const json& j) {
    std::string out;
    dump_canonical(j, out);
    return out;
}

json body_of(const Certificate& c) {
    json j;
    j["schema"] = kSchema;
    j["pipeline"] = c.pipeline;
    j["parameters"] = num_map(c.parameters);
    j["seed"] = c.seed;
    j["claims"] = json::array();
    for (const auto& cl : c.claims) {
        j["claims"].push_back({{"name", cl.name},
                               {"relation", cl.relation},
                               {"lhs", num(cl.lhs)},
                               {"rhs", num(cl.rhs)},
                               {"tolerance", num(cl.tolerance)},
                               {"status", to_string(cl.status)},
                               {"pass", cl.pass}});
    }
    j["global_min_R"] = num(c.global_min_R);
    j["floor"] = num(c.floor);
    j["volume"] = num(c.volume);
    j["diameter"] = {{"lower", num(c.diameter_lower)}, {"upper", num(c.diameter_upper)}};
    j["grid"] = num_map(c.grid);
    j["tolerances"] = num_map(c.tolerances);
    j["constants"] = num_map(c.constants);
    j["symbols"] = num_map(c.symbols);
    j["notes"] = c.notes;
    j["ingredients"] = json::array();
    for (const auto& g : c.ingredients) {
        j["ingredients"].push_back({{"name", g.name},
                                    {"kind", g.kind},
                                    {"provenance", g.provenance},
                                    {"trust", g.trust},
                                    {"floor", num(g.floor)},
                                    {"volume", num(g.volume)}});
    }
    j["pieces"] = json::array();
    for (const auto& p : c.pieces) {
        j["pieces"].push_back({{"label", p.label},
                               {"role", p.role},
                               {"length", num(p.length)},
                               {"min_R", num(p.min_R)},
                               {"volume", num(p.volume)},
                               {"nodes", p.nodes}});
    }
    j["all_pass"] = c.all_pass();
    return j;
}

ClaimStatus status_of(const std::string& s) {
    if (s == "PASS") return ClaimStatus::Pass;
    if (s == "FAIL") return ClaimStatus::Fail;
    if (s == "INCONCLUSIVE") return ClaimStatus::Inconclusive;
    fail(ErrorKind::SchemaViolation, "unknown claim status " + s);
}

}  // namespace

std::string to_string(ClaimStatus status) {
    switch (status) {
        case ClaimStatus::Pass: return "PASS";
        case ClaimStatus::Fail: return "FAIL";
        case ClaimStatus::Inconclusive: return "INCONCLUSIVE";
    }
    return "FAIL";
}

ClaimStatus evaluate_claim(const std::string& relation, double lhs, double rhs, double tolerance) {
    const bool greater = relation == ">" || relation == ">=";
    const bool strict = relation == ">" || relation == "<";
    require(greater || relation == "<" || relation == "<=", ErrorKind::SchemaViolation, "unknown relation " + relation);
    if (std::isnan(lhs) || std::isnan(rhs)) return ClaimStatus::Fail;
    const double margin = greater ? lhs - rhs : rhs - lhs;
    if (!strict) return margin >= 0.0 ? ClaimStatus::Pass : ClaimStatus::Fail;
    if (margin > tolerance) return ClaimStatus::Pass;
    return margin > 0.0 ? ClaimStatus::Inconclusive : ClaimStatus::Fail;
}

void Certificate::add_claim(std::string name, double lhs, const std::string& relation, double rhs) {
    Claim c;
    c.name = std::move(name);
    c.relation = relation;
    c.lhs = lhs;
    c.rhs = rhs;
    c.tolerance = tolerances.count("claim_margin") ? tolerances.at("claim_margin") : 1e-9;
    c.status = evaluate_claim(relation, lhs, rhs, c.tolerance);
    c.pass = c.status == ClaimStatus::Pass;
    claims.push_back(std::move(c));
}

bool Certificate::all_pass() const {
    return !claims.empty() && std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; });
}

const Claim* Certificate::find(const std::string& name) const {
    for (const auto& c : claims)
        if (c.name == name) return &c;
    return nullptr;
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    require(EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) == 1, ErrorKind::IoFailure,
            "sha256 failed");
    std::string out;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        out += buf;
    }
    return out;
}

std::string certificate_to_json(const Certificate& cert) {
    json j = body_of(cert);
    j["checksum"] = "sha256:" + sha256_hex(canonical(j));
    return canonical(j) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        require(j.at("schema").get<std::string>() == kSchema, ErrorKind::SchemaViolation, "unknown schema");
        Certificate c;
        c.pipeline = j.at("pipeline").get<std::string>();
        c.parameters = num_map_of(j.at("parameters"));
        c.seed = j.at("seed").get<std::uint64_t>();
        c.tolerances = num_map_of(j.at("tolerances"));
        for (const auto& cl : j.at("claims")) {
            Claim x;
            x.name = cl.at("name").get<std::string>();
            x.relation = cl.at("relation").get<std::string>();
            x.lhs = num_of(cl.at("lhs"));
            x.rhs = num_of(cl.at("rhs"));
            x.tolerance = num_of(cl.at("tolerance"));
            x.status = status_of(cl.at("status").get<std::string>());
            x.pass = cl.at("pass").get<bool>();
            c.claims.push_back(std::move(x));
        }
        c.global_min_R = num_of(j.at("global_min_R"));
        c.floor = num_of(j.at("floor"));
        c.volume = num_of(j.at("volume"));
        c.diameter_lower = num_of(j.at("diameter").at("lower"));
        c.diameter_upper = num_of(j.at("diameter").at("upper"));
        c.grid = num_map_of(j.at("grid"));
        c.constants = num_map_of(j.at("constants"));
        c.symbols = num_map_of(j.at("symbols"));
        c.notes = j.at("notes").get<std::vector<std::string>>();
        for (const auto& g : j.at("ingredients")) {
            c.ingredients.push_back({g.at("name").get<std::string>(), g.at("kind").get<std::string>(),
                                     g.at("provenance").get<std::string>(), g.at("trust").get<std::string>(),
                                     num_of(g.at("floor")), num_of(g.at("volume"))});
        }
        for (const auto& p : j.at("pieces")) {
            c.pieces.push_back({p.at("label").get<std::string>(), p.at("role").get<std::string>(),
                                num_of(p.at("length")), num_of(p.at("min_R")), num_of(p.at("volume")),
                                p.at("nodes").get<std::int64_t>()});
        }
        return c;
    } catch (const json::exception& e) {
        fail(ErrorKind::SchemaViolation, std::string("certificate: ") + e.what());
    }
}

void emit_certificate(const Certificate& cert, const std::filesystem::path& path) {
    write_text(path, certificate_to_json(cert));
}

RecheckReport recheck_certificate_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::SchemaViolation, std::string("certificate is not JSON: ") + e.what());
    }
    require(j.is_object() && j.contains("checksum") && j["checksum"].is_string(), ErrorKind::SchemaViolation,
            "certificate has no checksum");
    const auto stored_sum = j["checksum"].get<std::string>();
    const auto cert = certificate_from_json(text);

    RecheckReport r;
    json body = j;
    body.erase("checksum");
    r.checksum_ok = stored_sum == "sha256:" + sha256_hex(canonical(body));
    if (!r.checksum_ok) r.problems.push_back("checksum does not match the certificate body");

    bool all = !cert.claims.empty();
    for (const auto& c : cert.claims) {
        ++r.claims_checked;
        const auto truth = evaluate_claim(c.relation, c.lhs, c.rhs, c.tolerance);
        if (truth != c.status)
            r.problems.push_back(c.name + ": stored " + to_string(c.status) + ", recomputed " + to_string(truth));
        if (c.pass != (truth == ClaimStatus::Pass)) r.problems.push_back(c.name + ": pass flag disagrees with values");
        all = all && truth == ClaimStatus::Pass;
    }
    require(j.contains("all_pass") && j["all_pass"].is_boolean(), ErrorKind::SchemaViolation, "missing all_pass");
    if (j["all_pass"].get<bool>() != all) r.problems.push_back("all_pass flag disagrees with the claims");

    const Claim* floor = cert.find("min_R_above_floor");
    if (!floor) {
        r.problems.push_back("no min_R_above_floor claim");
    } else if (floor->lhs != cert.global_min_R || floor->rhs != cert.floor) {
        r.problems.push_back("min_R_above_floor does not use the stored global_min_R and floor");
    }
    r.ok = r.problems.empty();
    return r;
}

RecheckReport recheck_certificate(const std::filesystem::path& path) {
    return recheck_certificate_text(read_text(path));
}

void export_assembly(const Assembly& assembly, const std::filesystem::path& dir, const std::string& certificate_ref) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    require(!ec, ErrorKind::IoFailure, "cannot create " + dir.string());
    json j;
    j["pieces"] = json::array();
    char name[64];
    for (std::size_t i = 0; i < assembly.pieces.size(); ++i) {
        const auto& pc = assembly.pieces[i];
        std::snprintf(name, sizeof name, "piece_%02zu_%s.csv", i, pc.label.c_str());
        write_text(dir / name, profile_to_csv(pc.profile));
        json d = json::parse(profile_to_json(pc.profile));
        d["label"] = pc.label;
        d["role"] = to_string(pc.role);
        d["min_R"] = pc.min_R;
        d["volume"] = pc.volume;
        d["csv"] = name;
        j["pieces"].push_back(std::move(d));
    }
    j["interfaces"] = json::array();
    for (std::size_t i = 0; i < assembly.interfaces.size(); ++i) {
        const auto& bi = assembly.interfaces[i];
        j["interfaces"].push_back({{"p", bi.p},
                                   {"q", bi.q},
                                   {"a", {bi.a.f, bi.a.d1, bi.a.d2}},
                                   {"b", {bi.b.f, bi.b.d1, bi.b.d2}},
                                   {"totally_geodesic", bi.totally_geodesic},
                                   {"mismatch", assembly.interface_mismatch[i]}});
    }
    const auto& pv = assembly.provenance;
    j["provenance"] = {{"delta", pv.delta}, {"d", pv.d}, {"j", pv.j}, {"kappa", pv.kappa},
                       {"n", pv.n},         {"p", pv.p}, {"q", pv.q}, {"floor", pv.floor}};
    j["certificate_ref"] = certificate_ref;
    write_text(dir / "assembly.json", j.dump(1) + "\n");
}

}  // namespace neck
