#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lvwave {

/// Uniform mesh on [-L, L] with an odd number of nodes, so that xi = 0 is a node.
class Grid {
public:
    Grid(double half_width, std::size_t nodes);

    /// Builds the grid whose spacing is `spacing`; 2L / spacing must be an even integer.
    static Grid from_spacing(double half_width, double spacing);

    double half_width() const { return half_width_; }
    std::size_t size() const { return nodes_; }
    double spacing() const { return spacing_; }
    std::size_t center() const { return (nodes_ - 1) / 2; }

    /// Exactly antisymmetric about the center node.
    double node(std::size_t i) const;
    std::vector<double> nodes() const;

    /// Throws unless h < 2/c, which keeps the centered scheme monotone.
    void require_speed(double c) const;

    bool operator==(const Grid&) const = default;

private:
    double half_width_;
    std::size_t nodes_;
    double spacing_;
};

/// Values of a scalar function at every node of a grid.
class SampledFunction {
public:
    SampledFunction(Grid grid, std::vector<double> values);

    const Grid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    /// Linear interpolation, extended by the end values outside [-L, L].
    double at(double xi) const;

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Sampled pair (u, v) in the transformed variables; both components lie in [0, 1].
class WaveProfile {
public:
    /// Box violations up to this size are tolerated (floating-point undershoot).
    static constexpr double kBoxSlack = 1e-12;

    WaveProfile(Grid grid, std::vector<double> u, std::vector<double> v);

    const Grid& grid() const { return grid_; }
    std::span<const double> u() const { return u_; }
    std::span<const double> v() const { return v_; }
    std::size_t size() const { return u_.size(); }

    double u_at(double xi) const;
    double v_at(double xi) const;

    /// Profile sampled at xi + shift (shift > 0 moves the profile left), clamped extension.
    WaveProfile shifted(double shift) const;

private:
    Grid grid_;
    std::vector<double> u_;
    std::vector<double> v_;
};

/// Linear interpolation of nodal values on `grid`, clamped to the end values.
double interpolate(const Grid& grid, std::span<const double> values, double xi);

/// First xi at which `values` crosses `level` going left to right (linear interpolation).
/// Returns false if no crossing exists.
bool level_crossing(const Grid& grid, std::span<const double> values, double level, double& xi);

}  // namespace lvwave
