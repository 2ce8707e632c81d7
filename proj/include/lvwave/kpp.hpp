#pragma once

#include <span>
#include <vector>

#include "lvwave/grid.hpp"

namespace lvwave {

/// Scalar KPP nonlinearity with f(0) = f(b) = 0, f'(0) = d1, f'(b) = -d2.
///
/// The solver handles the logistic family f(w) = d1 w (1 - w/b), for which d2 = d1;
/// the rate formulas accept any d1, d2.
struct KppSpec {
    double d1 = 0.0;
    double d2 = 0.0;
    double b = 1.0;

    static KppSpec logistic(double d1, double b);

    bool is_logistic() const;
    double f(double w) const { return d1 * w * (1.0 - w / b); }
    double df(double w) const { return d1 * (1.0 - 2.0 * w / b); }
};

struct KppOptions {
    /// Residual sup-norm at which Newton stops.
    double tolerance = 1e-9;
    int max_newton_steps = 100;
    /// The wave is normalized so that w(phase_point) = b/2.
    double phase_point = 0.0;
    /// Translation of the logistic initial guess; the result must not depend on it.
    double initial_shift = 0.0;
    /// Relative slack on the minimal-speed precondition.
    double speed_tolerance = 1e-10;
};

/// Monotone KPP front on a truncated grid, normalized at the phase point.
struct KppWave {
    SampledFunction profile;
    double c = 0.0;
    KppSpec spec;
    int newton_steps = 0;
    double residual = 0.0;
    std::vector<double> residual_history;
};

/// Solves w'' - c w' + f(w) = 0, w(-inf) = 0, w(+inf) = b on the grid.
///
/// The left boundary value is an unknown tied to the phase condition, so the front
/// sits at the requested location rather than against a wall. Throws
/// SubcriticalSpeedError for c < 2 sqrt(d1) and NewtonError on divergence.
KppWave solve_kpp(const KppSpec& spec, double c, const Grid& grid, const KppOptions& opts = {});

struct KppRates {
    double minus_rate = 0.0;
    bool polynomial = false;
    double plus_rate = 0.0;
};

/// Tail rates of the KPP front; critical when c is within tolerance of 2 sqrt(d1).
KppRates kpp_predicted_rates(const KppSpec& spec, double c, double rel_tol = 1e-10);

/// Discrete residual sup-norm of the KPP equation at interior nodes.
double kpp_residual(const KppSpec& spec, double c, const Grid& grid, std::span<const double> w);

}  // namespace lvwave
