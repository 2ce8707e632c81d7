#pragma once

#include <span>
#include <vector>

#include "lvwave/grid.hpp"
#include "lvwave/model_params.hpp"
#include "lvwave/tridiagonal.hpp"

namespace lvwave {

/// Centered-difference coefficients of w'' - c w' on a uniform grid.
struct ConvectionDiffusionStencil {
    double west;    // multiplies w[i-1]
    double center;  // multiplies w[i]
    double east;    // multiplies w[i+1]

    ConvectionDiffusionStencil(double h, double c)
        : west(1.0 / (h * h) + c / (2.0 * h)),
          center(-2.0 / (h * h)),
          east(1.0 / (h * h) - c / (2.0 * h)) {}

    double apply(std::span<const double> w, std::size_t i) const {
        return west * w[i - 1] + center * w[i] + east * w[i + 1];
    }
};

/// Factorized discretization of w'' - c w' - beta w with Dirichlet ends.
///
/// Factor once, then solve for as many right-hand sides as needed.
class LinearBvpOperator {
public:
    LinearBvpOperator(const Grid& grid, double c, double beta);

    const Grid& grid() const { return grid_; }
    double c() const { return c_; }
    double beta() const { return beta_; }

    /// `rhs` holds the interior forcing; out[0] = left, out[n-1] = right.
    void solve(std::span<const double> rhs, double left, double right, std::span<double> out) const;

private:
    Grid grid_;
    double c_;
    double beta_;
    TridiagonalFactorization lu_;
};

/// Solves w'' - c w' - beta w = rhs on the grid with w(-L) = left_bc, w(L) = right_bc.
SampledFunction solve_linear_bvp(const Grid& grid, double c, double beta,
                                 const SampledFunction& rhs, double left_bc, double right_bc);

struct ResidualNorms {
    double u = 0.0;
    double v = 0.0;

    double max() const { return u > v ? u : v; }
};

/// Pointwise discrete residuals of the transformed wave system at interior nodes.
/// Entries 0 and n-1 are zero.
struct ResidualFields {
    std::vector<double> u;
    std::vector<double> v;
};

ResidualFields residual_fields(const Grid& grid, std::span<const double> u,
                               std::span<const double> v, const ModelParams& p, double c);

ResidualNorms residual_norms(const Grid& grid, std::span<const double> u,
                             std::span<const double> v, const ModelParams& p, double c);

/// Sup-norms of the two residuals over interior nodes; needs at least 5 nodes.
ResidualNorms discrete_residual(const WaveProfile& profile, const ModelParams& p, double c);

}  // namespace lvwave
