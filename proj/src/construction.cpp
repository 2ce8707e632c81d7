#include "lvwave/construction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lvwave/newton.hpp"

namespace lvwave {

LInterval l_interval(const ModelParams& p) {
    const double a1 = p.a1();
    const double q = p.r() * (p.a2() - 1.0);
    return {std::max(0.0, (q - (1.0 - a1)) / (1.0 - a1 + p.r())), 1.0 - a1};
}

double choose_l(const ModelParams& p) {
    require_h1(p);
    const LInterval iv = l_interval(p);
    if (!(iv.lo < iv.hi)) {
        throw ValidationError("no admissible l: interval [" + std::to_string(iv.lo) + ", " +
                              std::to_string(iv.hi) + ") is empty");
    }
    return 0.5 * (iv.lo + iv.hi);
}

bool dominates_after_shift(const WaveProfile& upper, const WaveProfile& lower, double nu,
                           double slack) {
    const Grid& g = lower.grid();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.node(i) + nu;
        if (upper.u_at(x) < lower.u()[i] - slack) return false;
        if (upper.v_at(x) < lower.v()[i] - slack) return false;
    }
    return true;
}

double find_shift_nu(const WaveProfile& upper, const WaveProfile& lower) {
    const double limit = 2.0 * lower.grid().half_width();
    for (int k = 0; 0.5 * k <= limit; ++k) {
        const double nu = 0.5 * k;
        if (dominates_after_shift(upper, lower, nu)) return nu;
    }
    throw ValidationError("pair cannot be ordered");
}

namespace {

std::optional<std::size_t> first_clamped(std::span<const double> w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 1.0) return i;
    }
    return std::nullopt;
}

WaveProfile upper_from_front(const SampledFunction& hbar, double l) {
    const std::size_t n = hbar.size();
    std::vector<double> u(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = std::min(hbar[i], 1.0);
        v[i] = std::min((1.0 + l) * hbar[i], 1.0);
    }
    return WaveProfile(hbar.grid(), std::move(u), std::move(v));
}

KppWave upper_front(const ModelParams& p, double c, const Grid& grid, double l, double nu,
                    const KppOptions& kpp) {
    const double d1 = 1.0 - p.a1();
    KppOptions o = kpp;
    o.phase_point = -nu;
    return solve_kpp(KppSpec::logistic(d1, d1 / (d1 - l)), c, grid, o);
}

bool ordered(const WaveProfile& upper, const WaveProfile& lower, double slack = 1e-12) {
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (upper.u()[i] < lower.u()[i] - slack || upper.v()[i] < lower.v()[i] - slack) return false;
    }
    return true;
}

}  // namespace

OrderedPair build_pair(const ModelParams& p, double c, const Grid& grid,
                       const UpperLowerConfig& cfg, const KppOptions& kpp) {
    require_h1(p);
    const LInterval iv = l_interval(p);
    if (!(cfg.l > 0.0) || !(cfg.l < iv.hi)) {
        throw ValidationError("l must lie in (0, 1 - a1); got " + std::to_string(cfg.l));
    }
    const double d1 = 1.0 - p.a1();
    KppOptions lower_opts = kpp;
    lower_opts.phase_point = 0.0;
    const KppWave g = solve_kpp(KppSpec::logistic(d1, 1.0), c, grid, lower_opts);
    std::vector<double> gv(g.profile.values().begin(), g.profile.values().end());
    WaveProfile lower(grid, gv, gv);

    // Phase must stay strictly inside the grid for the re-solve.
    const double max_nu = grid.half_width() - 2.0 * grid.spacing();
    double nu = 0.0;
    if (cfg.nu) {
        nu = *cfg.nu;
        if (!(nu >= 0.0) || !(nu <= max_nu)) throw ValidationError("nu out of range");
    } else {
        const WaveProfile base = upper_from_front(upper_front(p, c, grid, cfg.l, 0.0, kpp).profile,
                                                  cfg.l);
        nu = find_shift_nu(base, lower);
    }

    for (int attempt = 0; attempt < 8; ++attempt, nu += 0.5) {
        if (nu > max_nu) break;
        WaveProfile upper = upper_from_front(upper_front(p, c, grid, cfg.l, nu, kpp).profile, cfg.l);
        if (ordered(upper, lower)) {
            OrderedPair pair{upper, lower, cfg.l, nu, first_clamped(upper.v()),
                             first_clamped(upper.u())};
            return pair;
        }
        if (cfg.nu) break;
    }
    throw ValidationError("pair cannot be ordered");
}

InequalityReport check_def2_inequalities(const OrderedPair& pair, const ModelParams& p, double c,
                                   std::optional<double> slack) {
    const Grid& grid = pair.lower.grid();
    const double h = grid.spacing();
    InequalityReport rep;
    rep.slack = slack.value_or(10.0 * h * h);

    const ResidualFields up = residual_fields(grid, pair.upper.u(), pair.upper.v(), p, c);
    const ResidualFields lo = residual_fields(grid, pair.lower.u(), pair.lower.v(), p, c);
    rep.upper_worst_u = rep.upper_worst_v = -INFINITY;
    rep.lower_worst_u = rep.lower_worst_v = INFINITY;
    double upper_worst = -INFINITY;
    double lower_worst = INFINITY;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        rep.upper_worst_u = std::max(rep.upper_worst_u, up.u[i]);
        rep.upper_worst_v = std::max(rep.upper_worst_v, up.v[i]);
        rep.lower_worst_u = std::min(rep.lower_worst_u, lo.u[i]);
        rep.lower_worst_v = std::min(rep.lower_worst_v, lo.v[i]);
        const double uw = std::max(up.u[i], up.v[i]);
        if (uw > upper_worst) {
            upper_worst = uw;
            rep.upper_worst_node = i;
        }
        const double lw = std::min(lo.u[i], lo.v[i]);
        if (lw < lower_worst) {
            lower_worst = lw;
            rep.lower_worst_node = i;
        }
    }
    rep.upper_ok = upper_worst <= rep.slack;
    rep.lower_ok = lower_worst >= -rep.slack;

    // A kink of an upper solution must bend down: w'(x-) >= w'(x+).
    auto corner = [&](std::span<const double> w, std::optional<std::size_t> k)
        -> std::optional<CornerCheck> {
        if (!k || *k == 0 || *k + 1 >= w.size()) return std::nullopt;
        CornerCheck cc;
        cc.node = *k;
        cc.left_derivative = (w[*k] - w[*k - 1]) / h;
        cc.right_derivative = (w[*k + 1] - w[*k]) / h;
        cc.ok = cc.left_derivative >= cc.right_derivative - rep.slack;
        return cc;
    };
    rep.corner_v = corner(pair.upper.v(), pair.corner_v);
    rep.corner_u = corner(pair.upper.u(), pair.corner_u);
    rep.corners_ok = (!rep.corner_v || rep.corner_v->ok) && (!rep.corner_u || rep.corner_u->ok);
    return rep;
}

NormalizedWave normalize_wave(const WaveProfile& wave, const ModelParams& p, double c) {
    const Grid& grid = wave.grid();
    double xi0 = 0.0;
    if (!level_crossing(grid, wave.u(), 0.5, xi0)) {
        throw NumericalError("wave never reaches u = 1/2");
    }
    const WaveProfile guess = wave.shifted(xi0);
    Vec2 dir{1.0, 1.0};
    if (guess.u()[0] > 0.0) dir = {1.0, guess.v()[0] / guess.u()[0]};
    const PhasePin pin{grid.center(), 0.5, dir};
    NewtonOptions no;
    no.tolerance = 1e-11;
    NewtonSystemResult res =
        solve_wave_system(grid, p, c, std::vector<double>(guess.u().begin(), guess.u().end()),
                          std::vector<double>(guess.v().begin(), guess.v().end()), pin, no);
    if (!res.converged && !(res.residual < 1e-9)) {
        throw NewtonError("normalization Newton did not converge", res.residual_history);
    }
    for (auto& x : res.u) x = std::clamp(x, 0.0, 1.0);
    for (auto& x : res.v) x = std::clamp(x, 0.0, 1.0);
    return {WaveProfile(grid, std::move(res.u), std::move(res.v)), xi0, res.steps};
}

IterationResult monotone_iterate(const OrderedPair& pair, const ModelParams& p, double c,
                                 const IterationOptions& opts) {
    require_h1(p);
    const Grid& grid = pair.lower.grid();
    const std::size_t n = grid.size();
    const double beta_min = default_beta(p);
    const double beta = opts.beta.value_or(beta_min);
    if (!(beta >= beta_min)) {
        throw ValidationError("beta = " + std::to_string(beta) + " is below the minimum " +
                              std::to_string(beta_min));
    }
    for (std::size_t node : opts.record_nodes) {
        if (node >= n) throw ValidationError("record node out of range");
    }
    const LinearBvpOperator op(grid, c, beta);

    IterationTrace trace;
    trace.beta = beta;
    trace.left_u = pair.lower.u()[0];
    trace.left_v = pair.lower.v()[0];

    const bool from_upper = opts.start == IterationStart::upper;
    const WaveProfile& start = from_upper ? pair.upper : pair.lower;
    std::vector<double> u(start.u().begin(), start.u().end());
    std::vector<double> v(start.v().begin(), start.v().end());
    std::vector<double> nu(n), nv(n), ru(n), rv(n);

    auto record = [&] {
        if (opts.record_nodes.empty()) return;
        std::vector<double> ku, kv;
        for (std::size_t node : opts.record_nodes) {
            ku.push_back(u[node]);
            kv.push_back(v[node]);
        }
        trace.recorded_u.push_back(std::move(ku));
        trace.recorded_v.push_back(std::move(kv));
    };
    record();

    const double eps = opts.ordering_slack;
    bool done = false;
    for (long k = 0; k < opts.max_iterations; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            ru[i] = -beta * u[i] - reaction_u(p, u[i], v[i]);
            rv[i] = -beta * v[i] - reaction_v(p, u[i], v[i]);
        }
        op.solve(ru, trace.left_u, 1.0, nu);
        op.solve(rv, trace.left_v, 1.0, nv);

        double diff = 0.0;
        bool monotone = true;
        bool sandwiched = true;
        for (std::size_t i = 0; i < n; ++i) {
            diff = std::max({diff, std::abs(nu[i] - u[i]), std::abs(nv[i] - v[i])});
            if (from_upper) {
                monotone = monotone && nu[i] <= u[i] + eps && nv[i] <= v[i] + eps;
            } else {
                monotone = monotone && nu[i] >= u[i] - eps && nv[i] >= v[i] - eps;
            }
            sandwiched = sandwiched && nu[i] >= pair.lower.u()[i] - eps &&
                         nu[i] <= pair.upper.u()[i] + eps && nv[i] >= pair.lower.v()[i] - eps &&
                         nv[i] <= pair.upper.v()[i] + eps;
        }
        u.swap(nu);
        v.swap(nv);
        const ResidualNorms res = residual_norms(grid, u, v, p, c);
        trace.iterations = k + 1;
        trace.residuals.push_back(res.max());
        trace.differences.push_back(diff);
        trace.monotone.push_back(monotone);
        trace.sandwiched.push_back(sandwiched);
        record();
        if (!monotone || !sandwiched) {
            throw IterationError("quasimonotonicity broken at iteration " + std::to_string(k + 1),
                                 std::move(trace));
        }
        if (!std::isfinite(diff)) throw IterationError("iteration produced non-finite values",
                                                       std::move(trace));
        if (diff < opts.difference_tolerance && res.max() < opts.residual_tolerance) {
            trace.converged_residual = res;
            done = true;
            break;
        }
    }
    if (!done) {
        throw IterationError("monotone iteration did not converge in " +
                                 std::to_string(opts.max_iterations) + " iterations",
                             std::move(trace));
    }

    for (auto& x : u) x = std::clamp(x, 0.0, 1.0);
    for (auto& x : v) x = std::clamp(x, 0.0, 1.0);
    WaveProfile wave(grid, std::move(u), std::move(v));
    if (opts.normalize) {
        NormalizedWave nw = normalize_wave(wave, p, c);
        trace.normalization_shift = nw.shift;
        trace.normalization_newton_steps = nw.newton_steps;
        wave = std::move(nw.wave);
    }
    trace.final_residual = discrete_residual(wave, p, c);
    return {std::move(wave), std::move(trace)};
}

WaveRun compute_wave(const ModelParams& p, double c, const Grid& grid, std::optional<double> l,
                     const IterationOptions& opts) {
    require_hypotheses(p);
    const SpeedSpec s = classify_speed(p, c);
    if (s.regime == SpeedRegime::subcritical) {
        throw SubcriticalSpeedError("no monotone wave below c* = 2 sqrt(1 - a1)");
    }
    grid.require_speed(c);
    UpperLowerConfig cfg;
    cfg.l = l.value_or(choose_l(p));
    OrderedPair pair = build_pair(p, c, grid, cfg);
    IterationResult result = monotone_iterate(pair, p, c, opts);
    return {std::move(pair), std::move(result)};
}

}  // namespace lvwave
