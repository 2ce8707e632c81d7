#include "lvwave/bvp.hpp"

#include <algorithm>
#include <cmath>

#include "lvwave/errors.hpp"

namespace lvwave {

namespace {

TridiagonalFactorization factor_operator(const Grid& grid, double c, double beta) {
    if (!std::isfinite(beta) || beta <= 0.0) throw ValidationError("linear BVP needs beta > 0");
    grid.require_speed(c);
    const std::size_t n = grid.size();
    const ConvectionDiffusionStencil st(grid.spacing(), c);
    std::vector<double> lower(n, st.west), diag(n, st.center - beta), upper(n, st.east);
    lower[0] = 0.0;
    upper[0] = 0.0;
    diag[0] = 1.0;
    lower[n - 1] = 0.0;
    upper[n - 1] = 0.0;
    diag[n - 1] = 1.0;
    return TridiagonalFactorization(lower, diag, upper);
}

}  // namespace

LinearBvpOperator::LinearBvpOperator(const Grid& grid, double c, double beta)
    : grid_(grid), c_(c), beta_(beta), lu_(factor_operator(grid, c, beta)) {}

void LinearBvpOperator::solve(std::span<const double> rhs, double left, double right,
                              std::span<double> out) const {
    const std::size_t n = grid_.size();
    if (rhs.size() != n || out.size() != n) throw ValidationError("BVP vector length mismatch");
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = rhs[i];
    out[0] = left;
    out[n - 1] = right;
    lu_.solve_in_place(out);
}

SampledFunction solve_linear_bvp(const Grid& grid, double c, double beta,
                                 const SampledFunction& rhs, double left_bc, double right_bc) {
    if (!(rhs.grid() == grid)) throw ValidationError("right-hand side lives on a different grid");
    const LinearBvpOperator op(grid, c, beta);
    std::vector<double> out(grid.size());
    op.solve(rhs.values(), left_bc, right_bc, out);
    return SampledFunction(grid, std::move(out));
}

ResidualFields residual_fields(const Grid& grid, std::span<const double> u,
                               std::span<const double> v, const ModelParams& p, double c) {
    const std::size_t n = grid.size();
    if (u.size() != n || v.size() != n) throw ValidationError("profile length does not match grid");
    const ConvectionDiffusionStencil st(grid.spacing(), c);
    ResidualFields res{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    for (std::size_t i = 1; i + 1 < n; ++i) {
        res.u[i] = st.apply(u, i) + reaction_u(p, u[i], v[i]);
        res.v[i] = st.apply(v, i) + reaction_v(p, u[i], v[i]);
    }
    return res;
}

ResidualNorms residual_norms(const Grid& grid, std::span<const double> u,
                             std::span<const double> v, const ModelParams& p, double c) {
    const std::size_t n = grid.size();
    if (u.size() != n || v.size() != n) throw ValidationError("profile length does not match grid");
    const ConvectionDiffusionStencil st(grid.spacing(), c);
    ResidualNorms norms;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        norms.u = std::max(norms.u, std::abs(st.apply(u, i) + reaction_u(p, u[i], v[i])));
        norms.v = std::max(norms.v, std::abs(st.apply(v, i) + reaction_v(p, u[i], v[i])));
    }
    return norms;
}

ResidualNorms discrete_residual(const WaveProfile& profile, const ModelParams& p, double c) {
    if (profile.grid().size() < 5) throw ValidationError("residual needs a grid with at least 5 nodes");
    return residual_norms(profile.grid(), profile.u(), profile.v(), p, c);
}

}  // namespace lvwave
