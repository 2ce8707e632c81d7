#include "lvwave/newton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lvwave/bvp.hpp"
#include "lvwave/errors.hpp"

namespace lvwave {

namespace {

struct Merit {
    double residual;
    double phase;
    double value;
};

Merit evaluate(const Grid& grid, const ModelParams& p, double c, const std::vector<double>& u,
               const std::vector<double>& v, const std::optional<PhasePin>& pin) {
    const ResidualNorms r = residual_norms(grid, u, v, p, c);
    Merit m{r.max(), 0.0, 0.0};
    if (pin) m.phase = std::abs(u[pin->node] - pin->level);
    const double h = grid.spacing();
    m.value = std::max(m.residual, m.phase / (h * h));
    if (!std::isfinite(m.value)) m.value = std::numeric_limits<double>::infinity();
    return m;
}

}  // namespace

NewtonSystemResult solve_wave_system(const Grid& grid, const ModelParams& p, double c,
                                     std::vector<double> u, std::vector<double> v,
                                     const std::optional<PhasePin>& pin,
                                     const NewtonOptions& opts) {
    const std::size_t n = grid.size();
    if (u.size() != n || v.size() != n) throw ValidationError("initial guess length mismatch");
    if (n < 5) throw ValidationError("Newton solve needs at least 5 nodes");
    grid.require_speed(c);
    if (pin && (pin->node == 0 || pin->node >= n - 1)) {
        throw ValidationError("phase node must be interior");
    }

    const ConvectionDiffusionStencil st(grid.spacing(), c);
    NewtonSystemResult out;
    Merit merit = evaluate(grid, p, c, u, v, pin);
    out.residual_history.push_back(merit.value);

    std::vector<Mat2> lower(n), diag(n), upper(n);
    std::vector<Vec2> step(n), sens(n);
    std::vector<double> trial_u(n), trial_v(n);

    for (int it = 0; it < opts.max_steps && merit.value >= opts.tolerance; ++it) {
        const ResidualFields res = residual_fields(grid, u, v, p, c);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == 0 || i == n - 1) {
                lower[i] = {0, 0, 0, 0};
                upper[i] = {0, 0, 0, 0};
                diag[i] = {1, 0, 0, 1};
                step[i] = {0.0, 0.0};
                continue;
            }
            const ReactionJacobian jac = reaction_jacobian(p, u[i], v[i]);
            lower[i] = {st.west, 0, 0, st.west};
            upper[i] = {st.east, 0, 0, st.east};
            diag[i] = {st.center + jac.du_du, jac.du_dv, jac.dv_du, st.center + jac.dv_dv};
            step[i] = {-res.u[i], -res.v[i]};
        }
        solve_block_tridiagonal(lower, diag, upper, step);

        if (pin) {
            std::fill(sens.begin(), sens.end(), Vec2{0.0, 0.0});
            sens[0] = pin->direction;
            solve_block_tridiagonal(lower, diag, upper, sens);
            const double s = (pin->level - u[pin->node] - step[pin->node][0]) / sens[pin->node][0];
            if (!std::isfinite(s)) break;
            for (std::size_t i = 0; i < n; ++i) {
                step[i][0] += s * sens[i][0];
                step[i][1] += s * sens[i][1];
            }
        }

        double t = 1.0;
        bool accepted = false;
        for (int k = 0; k <= opts.max_halvings; ++k, t *= 0.5) {
            for (std::size_t i = 0; i < n; ++i) {
                trial_u[i] = u[i] + t * step[i][0];
                trial_v[i] = v[i] + t * step[i][1];
            }
            const Merit m = evaluate(grid, p, c, trial_u, trial_v, pin);
            if (m.value < merit.value) {
                merit = m;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        u.swap(trial_u);
        v.swap(trial_v);
        ++out.steps;
        out.residual_history.push_back(merit.value);
    }

    out.converged = merit.value < opts.tolerance;
    out.residual = merit.value;
    out.u = std::move(u);
    out.v = std::move(v);
    return out;
}

}  // namespace lvwave
