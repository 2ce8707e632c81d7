#include "lvwave/grid.hpp"

#include <cmath>
#include <string>

#include "lvwave/errors.hpp"

namespace lvwave {

Grid::Grid(double half_width, std::size_t nodes)
    : half_width_(half_width), nodes_(nodes), spacing_(0.0) {
    if (!std::isfinite(half_width) || half_width <= 0.0) {
        throw ValidationError("grid half-width must be positive");
    }
    if (nodes < 3) throw ValidationError("grid needs at least 3 nodes");
    if (nodes % 2 == 0) throw ValidationError("grid node count must be odd so that 0 is a node");
    spacing_ = 2.0 * half_width / static_cast<double>(nodes - 1);
}

Grid Grid::from_spacing(double half_width, double spacing) {
    if (!std::isfinite(spacing) || spacing <= 0.0) {
        throw ValidationError("grid spacing must be positive");
    }
    const double cells = 2.0 * half_width / spacing;
    const double rounded = std::round(cells);
    if (std::abs(cells - rounded) > 1e-9 * rounded) {
        throw ValidationError("2L/h must be an integer (got " + std::to_string(cells) + ")");
    }
    return Grid(half_width, static_cast<std::size_t>(rounded) + 1);
}

double Grid::node(std::size_t i) const {
    const auto m = static_cast<double>(nodes_ - 1);
    return half_width_ * (2.0 * static_cast<double>(i) - m) / m;
}

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(nodes_);
    for (std::size_t i = 0; i < nodes_; ++i) xs[i] = node(i);
    return xs;
}

void Grid::require_speed(double c) const {
    if (!(spacing_ * std::abs(c) < 2.0)) {
        throw ValidationError("grid spacing h = " + std::to_string(spacing_) +
                              " must satisfy h < 2/c for c = " + std::to_string(c));
    }
}

static void require_finite(std::span<const double> values, const char* what) {
    for (double x : values) {
        if (!std::isfinite(x)) throw ValidationError(std::string(what) + " contains non-finite values");
    }
}

SampledFunction::SampledFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw ValidationError("sample count does not match grid");
    require_finite(values_, "sampled function");
}

double SampledFunction::at(double xi) const { return interpolate(grid_, values_, xi); }

WaveProfile::WaveProfile(Grid grid, std::vector<double> u, std::vector<double> v)
    : grid_(grid), u_(std::move(u)), v_(std::move(v)) {
    if (u_.size() != grid_.size() || v_.size() != grid_.size()) {
        throw ValidationError("profile length does not match grid");
    }
    require_finite(u_, "profile u");
    require_finite(v_, "profile v");
    for (std::size_t i = 0; i < u_.size(); ++i) {
        if (u_[i] < -kBoxSlack || u_[i] > 1.0 + kBoxSlack || v_[i] < -kBoxSlack ||
            v_[i] > 1.0 + kBoxSlack) {
            throw ValidationError("profile leaves [0,1]^2 at node " + std::to_string(i));
        }
    }
}

double WaveProfile::u_at(double xi) const { return interpolate(grid_, u_, xi); }
double WaveProfile::v_at(double xi) const { return interpolate(grid_, v_, xi); }

WaveProfile WaveProfile::shifted(double shift) const {
    std::vector<double> u(size()), v(size());
    for (std::size_t i = 0; i < size(); ++i) {
        const double x = grid_.node(i) + shift;
        u[i] = u_at(x);
        v[i] = v_at(x);
    }
    return WaveProfile(grid_, std::move(u), std::move(v));
}

double interpolate(const Grid& grid, std::span<const double> values, double xi) {
    const std::size_t n = grid.size();
    const double s = (xi + grid.half_width()) / grid.spacing();
    if (s <= 0.0) return values[0];
    if (s >= static_cast<double>(n - 1)) return values[n - 1];
    auto i = static_cast<std::size_t>(s);
    if (i >= n - 1) i = n - 2;
    const double t = s - static_cast<double>(i);
    if (t == 0.0) return values[i];
    return (1.0 - t) * values[i] + t * values[i + 1];
}

bool level_crossing(const Grid& grid, std::span<const double> values, double level, double& xi) {
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        const double a = values[i] - level;
        const double b = values[i + 1] - level;
        if (a == 0.0) {
            xi = grid.node(i);
            return true;
        }
        if (a < 0.0 && b >= 0.0) {
            const double t = a / (a - b);
            xi = grid.node(i) + t * grid.spacing();
            return true;
        }
    }
    return false;
}

}  // namespace lvwave
