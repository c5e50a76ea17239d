#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "neck/assembly.hpp"

namespace neck {

enum class ClaimStatus { Pass, Fail, Inconclusive };
std::string to_string(ClaimStatus status);

/// One inequality "lhs relation rhs". Strict relations whose margin is at most
/// `tolerance` are Inconclusive, never Pass.
struct Claim {
    std::string name;
    std::string relation;  // ">", ">=", "<", "<="
    double lhs = 0.0;
    double rhs = 0.0;
    double tolerance = 0.0;
    ClaimStatus status = ClaimStatus::Fail;
    bool pass = false;
};

ClaimStatus evaluate_claim(const std::string& relation, double lhs, double rhs, double tolerance);

struct IngredientRecord {
    std::string name;
    std::string kind;
    std::string provenance;  // builtin | external:<file>
    std::string trust;       // VERIFIED | STAND-IN | EXTERNAL-TRUSTED
    double floor = 0.0;
    double volume = 0.0;
};

struct PieceRecord {
    std::string label;
    std::string role;
    double length = 0.0;
    double min_R = 0.0;
    double volume = 0.0;
    std::int64_t nodes = 0;
};

struct Certificate {
    std::string pipeline;
    std::map<std::string, double> parameters;
    std::uint64_t seed = 0;
    std::vector<Claim> claims;
    double global_min_R = 0.0;
    double floor = 0.0;
    double volume = 0.0;
    double diameter_lower = 0.0;
    double diameter_upper = 0.0;
    std::map<std::string, double> grid;
    std::map<std::string, double> tolerances;
    std::map<std::string, double> constants;
    std::map<std::string, double> symbols;
    std::vector<std::string> notes;
    std::vector<IngredientRecord> ingredients;
    std::vector<PieceRecord> pieces;

    void add_claim(std::string name, double lhs, const std::string& relation, double rhs);
    bool all_pass() const;
    const Claim* find(const std::string& name) const;
};

/// A metric fed into a pipeline: a named round model or a profile piece.
struct IngredientMetric {
    std::string name;
    std::optional<AmbientModel> model;
    std::optional<PieceProfile> profile;
    double certified_R_floor = 0.0;
    double volume = 0.0;
    std::string provenance = "builtin";
    bool stand_in = false;

    /// certified_R_floor must equal the recomputed minimum of R within 1e-9.
    void validate() const;
    int dim() const;

    static IngredientMetric round_sphere(int n, double radius);
    /// Round hemisphere scaled to R = n(n-1)(1 + 1e-3); boundary is not a gluing site.
    static IngredientMetric hemisphere_stand_in(int n);
    /// Unit round hemisphere as a profile from the pole to the equator.
    static IngredientMetric unit_hemisphere_profile(int n);
    /// JSON with name, certified_R_floor, volume and a piece descriptor.
    static IngredientMetric from_file(const std::filesystem::path& path);
    std::string to_json() const;
};

struct PipelineOptions {
    double grid_density = 2048.0;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
};

struct PipelineResult {
    Certificate certificate;
    Assembly assembly;
};

PipelineResult certify_tunnel(int n, double kappa, double delta, double d, int j, const PipelineOptions& opts = {});
/// body: "product" (S^p x S^q unit radii) or "round" (p = 0 only).
PipelineResult certify_surgery(int p, int q, double delta, const std::string& body, int j = 0,
                               const PipelineOptions& opts = {});

/// M # H through a tunnel of length D; j is raised until the tunnel floor clears n(n-1).
PipelineResult pipeline_mainA(const IngredientMetric& ingredient, const IngredientMetric& hemisphere, double D, int n,
                              int j, double delta, const PipelineOptions& opts = {});
/// mainA with the round S^n of radius 1/2.
PipelineResult pipeline_corD(double D, int n, int j, double delta, const PipelineOptions& opts = {});
/// mainA with S^p x S^q; radius defaults to 1/sqrt(2 n(n-1)). Without `sweep` a
/// product floor <= n(n-1) raises FloorCheckFailed.
PipelineResult pipeline_corT(int p, int q, int n, int j, double delta, const PipelineOptions& opts = {},
                             std::optional<double> radius = std::nullopt, bool sweep = true);
/// Chain of m unit spheres with floor(m/2) omega_n > V, then the hemisphere stand-in.
PipelineResult pipeline_corV(double V, int n, int j, double delta, const PipelineOptions& opts = {});
/// Volume chain for a thin tunnel to S^n(10 eps). Throws MissingIngredient without a hemisphere.
PipelineResult verify_mainB_budget(const std::optional<IngredientMetric>& hemisphere, double eps, double D, int n,
                                   double delta, int j = 100, const PipelineOptions& opts = {});

/// Canonical JSON: sorted keys, floats as %.12e, SHA-256 checksum of the body.
std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);
void emit_certificate(const Certificate& cert, const std::filesystem::path& path);

struct RecheckReport {
    bool ok = false;
    bool checksum_ok = false;
    int claims_checked = 0;
    std::vector<std::string> problems;
};

/// Recomputes every claim from the stored values. Throws SchemaViolation.
RecheckReport recheck_certificate_text(const std::string& text);
RecheckReport recheck_certificate(const std::filesystem::path& path);

/// Assembly descriptor (pieces, interfaces, provenance) plus one CSV per piece.
void export_assembly(const Assembly& assembly, const std::filesystem::path& dir, const std::string& certificate_ref);

std::string sha256_hex(const std::string& data);

}  // namespace neck
