#include "neck/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "neck/error.hpp"

namespace neck {

using nlohmann::json;

namespace {

struct Columns {
    std::vector<double> f, d1, d2;
};

Columns split(const Profile1D& p) {
    Columns c;
    for (const auto& j : p.jets()) {
        c.f.push_back(j.f);
        c.d1.push_back(j.d1);
        c.d2.push_back(j.d2);
    }
    return c;
}

Profile1D join(std::vector<double> s, const std::vector<double>& f, const std::vector<double>& d1,
               const std::vector<double>& d2, std::optional<double> d3f, std::optional<double> d3b) {
    require(f.size() == s.size() && d1.size() == s.size() && d2.size() == s.size(), ErrorKind::SchemaViolation,
            "sample columns have different lengths");
    std::vector<Jet> jets(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) jets[i] = Jet{f[i], d1[i], d2[i]};
    return Profile1D::from_jets(std::move(s), std::move(jets)).with_end_third_derivatives(d3f, d3b);
}

std::optional<double> opt(const json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return j[key].get<double>();
}

}  // namespace

std::string profile_to_json(const PieceProfile& profile) {
    json j;
    if (const auto* w = std::get_if<WarpProfile>(&profile)) {
        const auto c = split(w->phi);
        j["kind"] = "warp";
        j["m"] = w->m;
        j["L"] = w->length();
        j["samples"] = {{"s", w->phi.nodes()}, {"phi", c.f}, {"dphi", c.d1}, {"d2phi", c.d2}};
        j["d3_front"] = w->phi.end_third_derivative(false);
        j["d3_back"] = w->phi.end_third_derivative(true);
    } else {
        const auto& d = std::get<DoublyWarpProfile>(profile);
        const auto a = split(d.a), b = split(d.b);
        j["kind"] = "doubly_warp";
        j["p"] = d.p;
        j["q"] = d.q;
        j["L"] = d.length();
        j["samples"] = {{"s", d.b.nodes()}, {"a", a.f}, {"da", a.d1}, {"d2a", a.d2},
                        {"b", b.f},         {"db", b.d1}, {"d2b", b.d2}};
        j["d3_front"] = {d.a.end_third_derivative(false), d.b.end_third_derivative(false)};
        j["d3_back"] = {d.a.end_third_derivative(true), d.b.end_third_derivative(true)};
    }
    return j.dump();
}

PieceProfile profile_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
        const auto kind = j.at("kind").get<std::string>();
        const auto& S = j.at("samples");
        auto s = S.at("s").get<std::vector<double>>();
        auto col = [&](const char* k) { return S.at(k).get<std::vector<double>>(); };
        if (kind == "warp") {
            WarpProfile w{join(s, col("phi"), col("dphi"), col("d2phi"), opt(j, "d3_front"), opt(j, "d3_back")),
                          j.at("m").get<int>()};
            w.validate();
            return w;
        }
        require(kind == "doubly_warp", ErrorKind::SchemaViolation, "unknown piece kind " + kind);
        const auto f3 = j.at("d3_front").get<std::vector<double>>();
        const auto b3 = j.at("d3_back").get<std::vector<double>>();
        require(f3.size() == 2 && b3.size() == 2, ErrorKind::SchemaViolation, "d3 entries need two values");
        DoublyWarpProfile d{join(s, col("a"), col("da"), col("d2a"), f3[0], b3[0]),
                            join(s, col("b"), col("db"), col("d2b"), f3[1], b3[1]), j.at("p").get<int>(),
                            j.at("q").get<int>()};
        d.validate();
        return d;
    } catch (const json::exception& e) {
        fail(ErrorKind::SchemaViolation, std::string("piece descriptor: ") + e.what());
    }
}

std::string profile_to_csv(const PieceProfile& profile) {
    std::string out;
    char buf[256];
    if (const auto* w = std::get_if<WarpProfile>(&profile)) {
        std::snprintf(buf, sizeof buf, "# kind=warp m=%d d3=%.17g,%.17g\ns,phi,dphi,d2phi\n", w->m,
                      w->phi.end_third_derivative(false), w->phi.end_third_derivative(true));
        out += buf;
        for (std::size_t i = 0; i < w->phi.size(); ++i) {
            const auto& j = w->phi.jet(i);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", w->phi.nodes()[i], j.f, j.d1, j.d2);
            out += buf;
        }
        return out;
    }
    const auto& d = std::get<DoublyWarpProfile>(profile);
    std::snprintf(buf, sizeof buf, "# kind=doubly_warp p=%d q=%d d3=%.17g,%.17g,%.17g,%.17g\ns,a,b,da,db,d2a,d2b\n", d.p,
                  d.q, d.a.end_third_derivative(false), d.b.end_third_derivative(false), d.a.end_third_derivative(true),
                  d.b.end_third_derivative(true));
    out += buf;
    for (std::size_t i = 0; i < d.b.size(); ++i) {
        const auto &a = d.a.jet(i), &b = d.b.jet(i);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", d.b.nodes()[i], a.f, b.f, a.d1,
                      b.d1, a.d2, b.d2);
        out += buf;
    }
    return out;
}

PieceProfile profile_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string head, cols, line;
    require(static_cast<bool>(std::getline(in, head)) && static_cast<bool>(std::getline(in, cols)),
            ErrorKind::SchemaViolation, "profile CSV needs a comment line and a header");
    const bool warp = head.rfind("# kind=warp", 0) == 0;
    require(warp || head.rfind("# kind=doubly_warp", 0) == 0, ErrorKind::SchemaViolation, "bad profile CSV comment line");
    const std::size_t width = warp ? 4 : 7;
    std::vector<std::vector<double>> c(width);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::size_t k = 0;
        while (std::getline(row, cell, ',')) {
            require(k < width, ErrorKind::SchemaViolation, "too many CSV columns");
            try {
                c[k++].push_back(std::stod(cell));
            } catch (const std::exception&) {
                fail(ErrorKind::SchemaViolation, "bad number '" + cell + "' in profile CSV");
            }
        }
        require(k == width, ErrorKind::SchemaViolation, "short CSV row");
    }
    double d3[4] = {};
    int m = 0, p = 0, q = 0;
    const int got = warp ? std::sscanf(head.c_str(), "# kind=warp m=%d d3=%lg,%lg", &m, &d3[0], &d3[1])
                         : std::sscanf(head.c_str(), "# kind=doubly_warp p=%d q=%d d3=%lg,%lg,%lg,%lg", &p, &q, &d3[0],
                                       &d3[1], &d3[2], &d3[3]);
    require(got == (warp ? 3 : 6), ErrorKind::SchemaViolation, "bad profile CSV comment line");
    if (warp) {
        WarpProfile w{join(c[0], c[1], c[2], c[3], d3[0], d3[1]), m};
        w.validate();
        return w;
    }
    DoublyWarpProfile d{join(c[0], c[1], c[3], c[5], d3[0], d3[2]), join(c[0], c[2], c[4], c[6], d3[1], d3[3]), p, q};
    d.validate();
    return d;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorKind::IoFailure, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrorKind::IoFailure, "cannot write " + path.string());
    out << text;
    require(out.good(), ErrorKind::IoFailure, "write failed for " + path.string());
}

}  // namespace neck
