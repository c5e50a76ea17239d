#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace neck {

/// Value and first two derivatives of a profile function at one node.
struct Jet {
    double f = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Value and first three derivatives of the interpolant at an arbitrary point.
struct Eval {
    double f = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
};

/// A C^2 function on [s_0, s_{N-1}] stored as node jets (f, f', f'').
///
/// Between nodes the function is the unique quintic matching both end jets.
/// When the profile is built from plain samples the jets are taken from a
/// not-a-knot cubic spline, in which case the quintic reduces to that spline.
class Profile1D {
public:
    Profile1D() = default;

    static Profile1D from_samples(std::vector<double> s, std::span<const double> f);
    static Profile1D from_jets(std::vector<double> s, std::vector<Jet> jets);
    static Profile1D from_function(std::vector<double> s, const std::function<Jet(double)>& fn);
    static Profile1D constant(std::vector<double> s, double value);

    /// N equally spaced nodes on [0, length].
    static std::vector<double> uniform_grid(double length, std::size_t nodes);
    /// Uniform grid with `density` nodes per unit length and at least `min_nodes`.
    static std::vector<double> uniform_grid_density(double length, double density,
                                                    std::size_t min_nodes = 256);

    std::size_t size() const noexcept { return s_.size(); }
    bool empty() const noexcept { return s_.empty(); }
    double front_s() const { return s_.front(); }
    double back_s() const { return s_.back(); }
    double length() const { return s_.back() - s_.front(); }

    const std::vector<double>& nodes() const noexcept { return s_; }
    const std::vector<Jet>& jets() const noexcept { return jets_; }
    const Jet& jet(std::size_t i) const { return jets_[i]; }
    const Jet& front() const { return jets_.front(); }
    const Jet& back() const { return jets_.back(); }

    Eval eval(double x) const;
    /// Third derivative at the first or last node: the stored value when one was
    /// supplied (analytic profiles, spline ends), else the end cell's quintic.
    double end_third_derivative(bool back) const;
    Profile1D with_end_third_derivatives(std::optional<double> front, std::optional<double> back) const;

    /// s -> L - s; odd derivatives change sign.
    Profile1D reversed() const;
    /// s -> s_scale * s, f -> f_scale * f.
    Profile1D scaled(double s_scale, double f_scale) const;
    /// Nodes shifted so the domain starts at 0.
    Profile1D rebased() const;

    std::size_t cell_of(double x) const;

private:
    Profile1D(std::vector<double> s, std::vector<Jet> jets);

    std::vector<double> s_;
    std::vector<Jet> jets_;
    std::optional<double> d3_front_;
    std::optional<double> d3_back_;
};

/// Not-a-knot cubic spline second derivatives for samples (s, f).
std::vector<double> not_a_knot_second_derivatives(std::span<const double> s,
                                                  std::span<const double> f);

}  // namespace neck
