#include "lvwave/verification.hpp"

#include <algorithm>
#include <cmath>

#include "lvwave/bvp.hpp"
#include "lvwave/errors.hpp"
#include "lvwave/newton.hpp"

namespace lvwave {

ComparisonReport sliding_comparison(const WaveProfile& upper, const WaveProfile& lower,
                                    const ModelParams& p, double c, double N, double slack) {
    require_h1(p);
    const Grid& g = lower.grid();
    if (!(upper.grid() == g)) throw ValidationError("profiles live on different grids");
    g.require_speed(c);
    const double h = g.spacing();
    if (!(N > 0.0) || N > g.half_width() + 1e-12) throw ValidationError("N must lie in (0, L]");

    std::vector<std::size_t> nodes;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (std::abs(g.node(i)) <= N + 1e-9 * h) nodes.push_back(i);
    }
    const double lu_left = lower.u_at(-N), lv_left = lower.v_at(-N);
    const double uu_right = upper.u_at(N), uv_right = upper.v_at(N);
    for (std::size_t i : nodes) {
        if (lu_left > upper.u()[i] + slack || lv_left > upper.v()[i] + slack ||
            lower.u()[i] > uu_right + slack || lower.v()[i] > uv_right + slack) {
            throw ValidationError("end-ordering precondition fails at xi = " +
                                  std::to_string(g.node(i)));
        }
    }

    ComparisonReport rep;
    rep.N = N;
    const auto steps = static_cast<long>(std::llround(2.0 * N / h));
    for (long k = steps; k >= 0; --k) {
        const double mu = static_cast<double>(k) * h;
        rep.mu_path.push_back(mu);
        for (std::size_t i : nodes) {
            const double xi = g.node(i);
            if (xi > N - mu + 1e-9 * h) break;
            const double gu = lower.u()[i] - upper.u_at(xi + mu);
            const double gv = lower.v()[i] - upper.v_at(xi + mu);
            if (gu > slack || gv > slack) {
                const bool on_u = gu > slack;
                rep.touch = ComparisonTouch{mu, on_u ? Component::u : Component::v, i, xi,
                                            on_u ? gu : gv};
                return rep;
            }
        }
    }
    rep.ordered = true;
    return rep;
}

UniquenessReport uniqueness_check(const WaveProfile& w1, const WaveProfile& w2, double tol) {
    double x1 = 0.0, x2 = 0.0;
    if (!level_crossing(w1.grid(), w1.u(), 0.5, x1) ||
        !level_crossing(w2.grid(), w2.u(), 0.5, x2)) {
        throw NumericalError("half-level crossing missing");
    }
    UniquenessReport rep;
    rep.theta = x2 - x1;
    rep.tolerance = tol;
    const Grid& g = w2.grid();
    const double L = w1.grid().half_width();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double s = g.node(i) - rep.theta;
        if (s < -L || s > L) continue;
        rep.distance = std::max({rep.distance, std::abs(w2.u()[i] - w1.u_at(s)),
                                 std::abs(w2.v()[i] - w1.v_at(s))});
    }
    rep.pass = rep.distance < tol;
    return rep;
}

MonotonicityReport monotonicity_certificate(const WaveProfile& w, const ModelParams& p, double c,
                                            double resolution) {
    const Grid& g = w.grid();
    const std::size_t n = g.size();
    MonotonicityReport rep;
    rep.min_difference_u = rep.min_difference_v = INFINITY;
    auto settled = [&](double a, double b) {
        return (a <= resolution && b <= resolution) ||
               (1.0 - a <= resolution && 1.0 - b <= resolution);
    };
    auto check = [&](std::span<const double> y, std::optional<std::size_t>& first, double& mind) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double d = y[i + 1] - y[i];
            if (settled(y[i], y[i + 1])) {
                ++rep.rounding_band_nodes;
                continue;
            }
            mind = std::min(mind, d);
            if (!(d > 0.0)) {
                ++rep.failures;
                if (!first) first = i;
            }
        }
    };
    check(w.u(), rep.first_failure_u, rep.min_difference_u);
    check(w.v(), rep.first_failure_v, rep.min_difference_v);
    rep.strictly_increasing = rep.failures == 0;

    // The derivative pair solves the linearization of the wave system along the wave.
    if (n >= 7) {
        const double h = g.spacing();
        std::vector<double> d1(n, 0.0), d2(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            d1[i] = (w.u()[i + 1] - w.u()[i - 1]) / (2.0 * h);
            d2[i] = (w.v()[i + 1] - w.v()[i - 1]) / (2.0 * h);
        }
        const ConvectionDiffusionStencil st(h, c);
        for (std::size_t i = 2; i + 2 < n; ++i) {
            const ReactionJacobian j = reaction_jacobian(p, w.u()[i], w.v()[i]);
            const double r1 = st.apply(d1, i) + j.du_du * d1[i] + j.du_dv * d2[i];
            const double r2 = st.apply(d2, i) + j.dv_du * d1[i] + j.dv_dv * d2[i];
            rep.derivative_residual = std::max({rep.derivative_residual, std::abs(r1), std::abs(r2)});
        }
    }
    return rep;
}

SubcriticalDiagnostic subcritical_diagnostic(const ModelParams& p, double c, double L, double h) {
    require_h1(p);
    const SpeedSpec s = classify_speed(p, c);
    if (!(c > 0.0) || s.regime != SpeedRegime::subcritical) {
        throw ValidationError("not subcritical");
    }
    SubcriticalDiagnostic d;
    d.c = c;
    d.discriminant = c * c - 4.0 * (1.0 - p.a1());
    const double im = std::sqrt(-d.discriminant) / 2.0;
    d.root_plus = {c / 2.0, im};
    d.root_minus = {c / 2.0, -im};
    d.complex_roots = d.discriminant < 0.0;

    const Grid g = Grid::from_spacing(L, h);
    g.require_speed(c);
    std::vector<double> u(g.size()), v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        u[i] = v[i] = 1.0 / (1.0 + std::exp(-g.node(i)));
    }
    u.front() = v.front() = 0.0;
    u.back() = v.back() = 1.0;
    NewtonOptions opts;
    opts.max_steps = 100;
    const NewtonSystemResult res = solve_wave_system(g, p, c, u, v, std::nullopt, opts);
    d.newton_converged = res.converged;
    d.newton_residual = res.residual;
    d.min_u = *std::min_element(res.u.begin(), res.u.end());
    int prev = 0;
    for (double x : res.u) {
        // Values at rounding level carry no sign information.
        const int sg = x > 1e-14 ? 1 : (x < -1e-14 ? -1 : 0);
        if (sg != 0 && prev != 0 && sg != prev) ++d.sign_changes_u;
        if (sg != 0) prev = sg;
    }
    d.left_box = d.min_u < -WaveProfile::kBoxSlack;
    d.evidence = d.complex_roots && (d.sign_changes_u >= 2 || d.left_box || !d.newton_converged);
    return d;
}

}  // namespace lvwave
