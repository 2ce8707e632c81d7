#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lvwave/grid.hpp"
#include "lvwave/model_params.hpp"
#include "lvwave/tridiagonal.hpp"

namespace lvwave {

struct NewtonOptions {
    double tolerance = 1e-10;
    int max_steps = 60;
    int max_halvings = 40;
};

/// Phase condition replacing the fixed left boundary value.
///
/// The left Dirichlet data become s * direction for a free scalar s, and the extra
/// equation u[node] = level pins the translation.
struct PhasePin {
    std::size_t node = 0;
    double level = 0.5;
    Vec2 direction{1.0, 1.0};
};

struct NewtonSystemResult {
    std::vector<double> u;
    std::vector<double> v;
    bool converged = false;
    int steps = 0;
    double residual = 0.0;
    std::vector<double> residual_history;
};

/// Damped Newton on the discretized transformed wave system.
///
/// Dirichlet data are the end values of the initial guess, except that with a pin the
/// left values are free along `pin->direction`. Never throws on non-convergence;
/// inspect `converged`.
NewtonSystemResult solve_wave_system(const Grid& grid, const ModelParams& p, double c,
                                     std::vector<double> u, std::vector<double> v,
                                     const std::optional<PhasePin>& pin,
                                     const NewtonOptions& opts = {});

}  // namespace lvwave
