#include "lvwave/kpp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lvwave/bvp.hpp"
#include "lvwave/errors.hpp"
#include "lvwave/tridiagonal.hpp"

namespace lvwave {

KppSpec KppSpec::logistic(double d1, double b) {
    if (!(d1 > 0.0) || !(b > 0.0) || !std::isfinite(d1) || !std::isfinite(b)) {
        throw ValidationError("KPP spec needs d1 > 0 and b > 0");
    }
    return KppSpec{d1, d1, b};
}

bool KppSpec::is_logistic() const {
    return d1 > 0.0 && b > 0.0 && std::abs(d2 - d1) <= 1e-14 * d1;
}

namespace {

bool is_critical(double d1, double c, double rel_tol) {
    const double cmin = 2.0 * std::sqrt(d1);
    return std::abs(c - cmin) <= rel_tol * std::max(1.0, cmin);
}

void require_speed(const KppSpec& spec, double c, double rel_tol) {
    if (!(spec.d1 > 0.0) || !(spec.d2 >= 0.0)) throw ValidationError("KPP spec needs d1 > 0, d2 >= 0");
    const double cmin = 2.0 * std::sqrt(spec.d1);
    if (!std::isfinite(c) || (c < cmin && !is_critical(spec.d1, c, rel_tol))) {
        throw SubcriticalSpeedError("below KPP minimal speed: c = " + std::to_string(c) +
                                    " < 2 sqrt(d1) = " + std::to_string(cmin));
    }
}

/// Linear weights of the phase functional w(xi_p) on the grid.
struct PhaseFunctional {
    std::size_t i;
    double wi;
    double wj;

    double apply(std::span<const double> w) const { return wi * w[i] + wj * w[i + 1]; }
};

PhaseFunctional phase_functional(const Grid& grid, double xi) {
    const double s = (xi + grid.half_width()) / grid.spacing();
    if (!(s >= 1.0) || !(s <= static_cast<double>(grid.size() - 2))) {
        throw ValidationError("phase point must lie strictly inside the grid");
    }
    auto i = static_cast<std::size_t>(s);
    if (i >= grid.size() - 2) i = grid.size() - 3;
    const double t = s - static_cast<double>(i);
    return {i, 1.0 - t, t};
}

}  // namespace

KppRates kpp_predicted_rates(const KppSpec& spec, double c, double rel_tol) {
    require_speed(spec, c, rel_tol);
    if (is_critical(spec.d1, c, rel_tol)) {
        const double s = std::sqrt(spec.d1);
        return {s, true, std::sqrt(spec.d1 + spec.d2) - s};
    }
    return {(c - std::sqrt(c * c - 4.0 * spec.d1)) / 2.0, false,
            (std::sqrt(c * c + 4.0 * spec.d2) - c) / 2.0};
}

double kpp_residual(const KppSpec& spec, double c, const Grid& grid, std::span<const double> w) {
    const ConvectionDiffusionStencil st(grid.spacing(), c);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < w.size(); ++i) {
        worst = std::max(worst, std::abs(st.apply(w, i) + spec.f(w[i])));
    }
    return worst;
}

KppWave solve_kpp(const KppSpec& spec, double c, const Grid& grid, const KppOptions& opts) {
    require_speed(spec, c, opts.speed_tolerance);
    if (!spec.is_logistic()) {
        throw ValidationError("solve_kpp supports the logistic family only (d2 == d1)");
    }
    grid.require_speed(c);

    const std::size_t n = grid.size();
    const double h = grid.spacing();
    const double b = spec.b;
    const KppRates rates = kpp_predicted_rates(spec, c, opts.speed_tolerance);
    const PhaseFunctional phase = phase_functional(grid, opts.phase_point);
    const ConvectionDiffusionStencil st(h, c);

    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.node(i) - opts.phase_point - opts.initial_shift;
        w[i] = b / (1.0 + std::exp(-rates.minus_rate * x));
    }
    w[n - 1] = b;

    auto merit_of = [&](std::span<const double> y) {
        const double m =
            std::max(kpp_residual(spec, c, grid, y), std::abs(phase.apply(y) - b / 2.0) / (h * h));
        return std::isfinite(m) ? m : std::numeric_limits<double>::infinity();
    };

    std::vector<double> lower(n, st.west), diag(n), upper(n, st.east);
    lower[0] = upper[0] = lower[n - 1] = upper[n - 1] = 0.0;
    diag[0] = diag[n - 1] = 1.0;
    std::vector<double> step(n), sens(n), trial(n);

    double merit = merit_of(w);
    std::vector<double> history{merit};
    int steps = 0;
    bool polished = false;
    while (steps < opts.max_newton_steps) {
        if (merit < opts.tolerance) {
            // One extra step drives the residual to rounding level when it helps.
            if (polished) break;
            polished = true;
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            diag[i] = st.center + spec.df(w[i]);
            step[i] = -(st.apply(w, i) + spec.f(w[i]));
        }
        step[0] = step[n - 1] = 0.0;
        const TridiagonalFactorization lu(lower, diag, upper);
        lu.solve_in_place(step);
        std::fill(sens.begin(), sens.end(), 0.0);
        sens[0] = 1.0;
        lu.solve_in_place(sens);
        const double s = (b / 2.0 - phase.apply(w) - phase.apply(step)) / phase.apply(sens);
        if (!std::isfinite(s)) break;
        for (std::size_t i = 0; i < n; ++i) step[i] += s * sens[i];

        double t = 1.0;
        bool accepted = false;
        for (int k = 0; k < 40; ++k, t *= 0.5) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = w[i] + t * step[i];
            if (trial[0] <= 0.0) continue;
            const double m = merit_of(trial);
            if (m < merit) {
                merit = m;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        w.swap(trial);
        ++steps;
        history.push_back(merit);
    }
    if (!(merit < opts.tolerance)) {
        throw NewtonError("KPP Newton iteration did not converge (residual " +
                              std::to_string(merit) + " after " + std::to_string(steps) + " steps)",
                          history);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(w[i + 1] > w[i])) {
            throw NumericalError("KPP front is not strictly increasing at node " + std::to_string(i));
        }
    }
    const double residual = kpp_residual(spec, c, grid, w);
    return KppWave{SampledFunction(grid, std::move(w)), c, spec, steps, residual, std::move(history)};
}

}  // namespace lvwave
