#pragma once

#include <string>
#include <vector>

#include "neck/ambient.hpp"
#include "neck/bending.hpp"
#include "neck/warped.hpp"

namespace neck {

/// Gluing data at one end of a piece: round S^{n-1}(b) or S^p(a) x S^{q-1}(b),
/// with the radii's jets in the outgoing normal direction s.
struct BoundaryInterface {
    enum class Kind { RoundSphere, ProductOfRounds };

    Kind kind = Kind::RoundSphere;
    int p = 0;
    int q = 3;
    Jet a;  // unused for RoundSphere
    Jet b;
    bool totally_geodesic = false;

    int dim() const { return p + q - 1; }

    /// Interface at the front (s = s_0) or back of a piece.
    static BoundaryInterface of(const PieceProfile& piece, bool back);
};

/// Scale-free jet distance: max over factors of |df|/|f|, |df'|, |f df''|.
double jet_mismatch(const BoundaryInterface& lhs, const BoundaryInterface& rhs);

/// Path tau -> S^p(rho(tau)) x S^{q-1}(sigma(tau)), tau in [0, 1], built from
/// quintic smoothsteps so the path has vanishing first and second derivatives
/// at both ends.
struct MetricPath {
    Profile1D rho;
    Profile1D sigma;
    int p = 0;
    int q = 3;

    /// O'Neill with A = 0 and totally geodesic fibers: R = p(p-1)/rho^2 + (q-1)(q-2)/sigma^2.
    double scalar_at(double tau) const;
    /// Minimum over grid nodes and cell midpoints.
    double min_scalar() const;
};

/// Two-stage smoothstep path between radii pairs; the stage that shrinks sigma
/// runs first so R only rises before it falls to the target value.
MetricPath radii_path(int p, int q, double rho0, double sigma0, double rho1, double sigma1,
                      std::size_t nodes = 257);

/// Radii interpolated linearly in tau. Endpoint derivatives do not vanish, so a
/// collar over this path has the plain 1/c^2 deficit.
MetricPath linear_radii_path(int p, int q, double rho0, double sigma0, double rho1, double sigma1,
                             std::size_t nodes = 129);

/// Homotopy from `start` to g^p_{target_rho} + g^{q-1}_{target_a}, verified
/// pointwise above kappa - delta. Throws InfeasibleBudget, or ParameterOutOfRange
/// for a <= 0.
MetricPath boundary_homotopy(const BoundaryInterface& start, double target_a, double kappa, double delta,
                             double target_rho = 1.0);

struct CollarSpec {
    MetricPath path;
    double c = 1.0;
};

/// ds^2 + h_{s/c} on [0, c] as a doubly warped profile.
DoublyWarpProfile collar_metric(const CollarSpec& spec);

/// Minimum closed-form R over nodes and midpoints of a piece.
double verified_min_scalar(const PieceProfile& piece);

/// Smallest power-of-two c whose collar has min R > kappa - delta.
/// Throws InfeasibleBudget beyond c = 2^20.
double choose_stretch(const MetricPath& path, double kappa, double delta);

struct CapPiece {
    PieceProfile profile;
    BoundaryInterface interface;
};

/// D^{p+1} x S^{q-1}(a). The disk carries a torpedo metric (radius 1 at the
/// boundary, round cap at the center); for p = 0 the torpedo closes S^{q-1}(a).
CapPiece cap_piece(int p, int q, double a);

/// Torpedo warp: value r at s = 0 with zero slope and curvature; the slope turns
/// on over [0, w] and the profile closes as a round cap. f'' <= 0 throughout.
Profile1D torpedo_profile(double r, double w, std::size_t nodes_per_part = 257);

enum class PieceRole { Body, Neck, Collar, Cylinder, Cap };
std::string to_string(PieceRole role);

struct AssemblyPiece {
    PieceRole role = PieceRole::Body;
    std::string label;
    PieceProfile profile;
    double min_R = 0.0;
    double volume = 0.0;
    double volume_error = 0.0;
};

struct Provenance {
    double delta = 0.0;
    double d = 0.0;
    int j = 0;
    double kappa = 0.0;
    int n = 0;
    int p = 0;
    int q = 0;
    double floor = 0.0;
};

/// Ordered chain of pieces glued end to end.
struct Assembly {
    std::vector<AssemblyPiece> pieces;
    std::vector<BoundaryInterface> interfaces;  // interfaces[i] joins pieces i and i+1
    std::vector<double> interface_mismatch;
    Provenance provenance;
    double curve_C = 0.0;  // length constant of the bending curves used

    /// Verifies the piece and its junction with the previous one (<= 1e-8).
    void append(PieceRole role, std::string label, PieceProfile profile);
    void append_all(const Assembly& other);

    double global_min_R() const;
    double total_volume() const;
    double axial_length() const;
    double max_mismatch() const;
};

struct DiameterBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// lower = axial length (every path between the end slices crosses all of
/// them); upper = axial length + 2 max fiber diameter.
DiameterBounds diameter(const Assembly& assembly);

/// Closed model minus the geodesic ball (p = 0) or tube of radius r0 around
/// the core, parametrized from the antipodal core toward it.
PieceProfile body_complement(const AmbientModel& model, double r0);
/// Hemisphere of the round model minus the ball of radius r0 around its pole,
/// from r0 out to the totally geodesic boundary.
PieceProfile hemisphere_complement(const AmbientModel& model, double r0);
/// Annulus of the model between distances r_from and r_to from the core, both
/// away from the poles; s runs from r_from toward r_to.
PieceProfile model_band(const AmbientModel& model, double r_from, double r_to);
/// Exact volume of the closed model (round S^n or S^p x S^q).
double model_volume(const AmbientModel& model);

struct NeckPiece {
    PieceProfile profile;
    CurveDesign design;
};

/// Bending neck inside the tube of radius 2 delta, vertical on [delta, 2 delta)
/// so the annulus there is untouched, with min R > kappa - budget.
NeckPiece tunnel_neck(const AmbientModel& model, double delta, double kappa, double budget,
                      double density = 2048.0);

/// Tunnel between two round models: neck, straight cylinder of length d, collar
/// between the two neck radii when they differ, mirrored neck.
Assembly build_tunnel_between(const AmbientModel& left, const AmbientModel& right, double delta, double d, int j,
                              double kappa, double density = 2048.0);
/// Symmetric tunnel in the round model with scalar curvature kappa.
Assembly build_tunnel(double delta, double d, int j, double kappa, int n, double density = 2048.0);

/// Calibrated constants for diam(T) < C (delta + d) and vol(T) < C (delta^n + d delta^(n-1)),
/// measured over delta in {0.2, 0.1, 0.05}, d in {0, 1, 2}, n = 3, with headroom.
inline constexpr double kTunnelDiameterC = 24.0;
inline constexpr double kTunnelVolumeC = 96.0;

/// Codimension-q surgery on the closed model along S^p x {z}: body minus the
/// tube, neck, collar to g^p_1 + g^{q-1}_{delta/2}, cap.
Assembly perform_surgery(const AmbientModel& ambient, int p, int q, double delta, int j = 0);

}  // namespace neck
