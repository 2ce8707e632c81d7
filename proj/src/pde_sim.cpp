#include "lvwave/pde_sim.hpp"

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <string>
#include <thread>

#include "lvwave/asymptotics.hpp"
#include "lvwave/errors.hpp"
#include "lvwave/tridiagonal.hpp"

namespace lvwave {

namespace {

void validate(const SimConfig& cfg) {
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!positive(cfg.X) || !positive(cfg.dx) || !positive(cfg.dt) || !std::isfinite(cfg.T) ||
        cfg.T < 0.0 || !std::isfinite(cfg.x_min)) {
        throw ValidationError("simulation needs X, dx, dt > 0 and T >= 0");
    }
    if (!(cfg.level > 0.0 && cfg.level < 1.0)) throw ValidationError("level must lie in (0, 1)");
    if (cfg.X / cfg.dx < 4.0) throw ValidationError("simulation needs at least 5 mesh points");
    if (cfg.scheme == DiffusionScheme::explicit_euler && cfg.dt > cfg.dx * cfg.dx / 2.0) {
        throw ValidationError("explicit diffusion needs dt <= dx^2 / 2");
    }
    if (cfg.init == InitialKind::wave_profile && !cfg.wave) {
        throw ValidationError("wave initial data requested without a wave");
    }
    if (cfg.snapshot_interval < 0.0) throw ValidationError("snapshot interval must be >= 0");
}

void initial_fields(const SimConfig& cfg, const std::vector<double>& x, std::vector<double>& u,
                    std::vector<double>& v) {
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double s = x[i] - cfg.x_min;
        switch (cfg.init) {
            case InitialKind::step:
                u[i] = s <= cfg.step_width + 1e-12 * cfg.dx ? 1.0 : 0.0;
                break;
            case InitialKind::smoothed_step:
                u[i] = 0.5 * (1.0 - std::tanh((s - cfg.step_width) / cfg.smoothing));
                break;
            case InitialKind::constant:
                u[i] = cfg.constant_u;
                v[i] = cfg.constant_v;
                continue;
            case InitialKind::wave_profile: {
                const WaveProfile& w = cfg.wave->wave;
                const double L = w.grid().half_width();
                if (x[i] < -L) {
                    const double e = std::exp(cfg.wave->lambda_left * (x[i] + L));
                    u[i] = w.u()[0] * e;
                    v[i] = 1.0 - w.v()[0] * e;
                } else {
                    u[i] = w.u_at(x[i]);
                    v[i] = 1.0 - w.v_at(x[i]);
                }
                continue;
            }
        }
        v[i] = 1.0 - u[i];
    }
}

/// Interpolated crossing of `level` nearest the invaded side; false when u >= level there
/// everywhere or nowhere.
bool find_front(const std::vector<double>& x, const std::vector<double>& u, double level,
                InvadedSide side, double& xf) {
    const std::size_t n = u.size();
    if (side == InvadedSide::right) {
        if (u[n - 1] >= level) return false;
        for (std::size_t i = n - 1; i-- > 0;) {
            if (u[i] >= level) {
                const double t = (u[i] - level) / (u[i] - u[i + 1]);
                xf = x[i] + t * (x[i + 1] - x[i]);
                return true;
            }
        }
        return false;
    }
    if (u[0] >= level) return false;
    for (std::size_t i = 1; i < n; ++i) {
        if (u[i] >= level) {
            const double t = (level - u[i - 1]) / (u[i] - u[i - 1]);
            xf = x[i - 1] + t * (x[i] - x[i - 1]);
            return true;
        }
    }
    return false;
}

/// Hands snapshots to the sink on a separate thread so stepping never waits on output.
class SnapshotWriter {
public:
    explicit SnapshotWriter(SnapshotSink sink) : sink_(std::move(sink)) {
        worker_ = std::thread([this] { run(); });
    }
    SnapshotWriter(const SnapshotWriter&) = delete;
    SnapshotWriter& operator=(const SnapshotWriter&) = delete;
    ~SnapshotWriter() {
        {
            std::lock_guard lock(mu_);
            done_ = true;
        }
        cv_.notify_one();
        worker_.join();
    }

    void push(Snapshot s) {
        {
            std::lock_guard lock(mu_);
            queue_.push_back(std::move(s));
        }
        cv_.notify_one();
    }

private:
    void run() {
        std::unique_lock lock(mu_);
        for (;;) {
            cv_.wait(lock, [this] { return done_ || !queue_.empty(); });
            while (!queue_.empty()) {
                Snapshot s = std::move(queue_.front());
                queue_.pop_front();
                lock.unlock();
                sink_(s);
                lock.lock();
            }
            if (done_) return;
        }
    }

    SnapshotSink sink_;
    std::mutex mu_;
    std::condition_variable cv_;
    std::deque<Snapshot> queue_;
    bool done_ = false;
    std::thread worker_;
};

}  // namespace

SimTrace simulate(const ModelParams& p, const SimConfig& cfg) {
    require_h1(p);
    validate(cfg);
    const auto cells = static_cast<std::size_t>(std::llround(cfg.X / cfg.dx));
    const std::size_t n = cells + 1;
    const double dx = cfg.dx;
    const double dt = cfg.dt;

    SimTrace trace;
    trace.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) trace.x[i] = cfg.x_min + static_cast<double>(i) * dx;
    std::vector<double> u(n), v(n), fu(n), fv(n);
    initial_fields(cfg, trace.x, u, v);

    // Zero-flux ends through a reflected ghost node.
    const double k = dt / (dx * dx);
    std::optional<TridiagonalFactorization> lu;
    if (cfg.scheme == DiffusionScheme::implicit) {
        std::vector<double> lo(n, -k), di(n, 1.0 + 2.0 * k), up(n, -k);
        up[0] = -2.0 * k;
        lo[n - 1] = -2.0 * k;
        lu.emplace(lo, di, up);
    }

    std::optional<SnapshotWriter> writer;
    if (cfg.snapshot_interval > 0.0 && cfg.sink) writer.emplace(cfg.sink);

    const auto steps = static_cast<long>(std::llround(cfg.T / dt));
    const long snap_every =
        cfg.snapshot_interval > 0.0
            ? std::max(1L, static_cast<long>(std::llround(cfg.snapshot_interval / dt)))
            : 0;
    const double edge = 5.0 * dx;

    auto observe = [&](long step) {
        const double t = static_cast<double>(step) * dt;
        double xf = 0.0;
        if (find_front(trace.x, u, cfg.level, cfg.invaded, xf)) {
            trace.fronts.push_back({t, xf});
            const double dist = cfg.invaded == InvadedSide::right ? trace.x.back() - xf
                                                                  : xf - trace.x.front();
            if (dist < edge) trace.boundary_hit = true;
        } else {
            const double end_u = cfg.invaded == InvadedSide::right ? u.back() : u.front();
            if (end_u >= cfg.level) trace.boundary_hit = true;
        }
        for (std::size_t i = 0; i < n; ++i) {
            trace.box_violation =
                std::max({trace.box_violation, -u[i], u[i] - 1.0, -v[i], v[i] - 1.0});
        }
        if (snap_every > 0 && step % snap_every == 0) {
            trace.snapshot_times.push_back(t);
            if (writer) writer->push({t, u, v});
        }
    };
    observe(0);

    const double a1 = p.a1();
    const double a2 = p.a2();
    const double r = p.r();
    for (long s = 1; s <= steps; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            fu[i] = u[i] * (1.0 - u[i] - a1 * v[i]);
            fv[i] = r * v[i] * (1.0 - a2 * u[i] - v[i]);
        }
        if (lu) {
            for (std::size_t i = 0; i < n; ++i) {
                u[i] += dt * fu[i];
                v[i] += dt * fv[i];
            }
            lu->solve_in_place(u);
            lu->solve_in_place(v);
        } else {
            std::vector<double> nu(n), nv(n);
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t l = i == 0 ? 1 : i - 1;
                const std::size_t rr = i == n - 1 ? n - 2 : i + 1;
                nu[i] = u[i] + k * (u[l] - 2.0 * u[i] + u[rr]) + dt * fu[i];
                nv[i] = v[i] + k * (v[l] - 2.0 * v[i] + v[rr]) + dt * fv[i];
            }
            u.swap(nu);
            v.swap(nv);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(u[i]) || !std::isfinite(v[i])) {
                throw NumericalError("simulation blew up; last valid time t = " +
                                     std::to_string(static_cast<double>(s - 1) * dt));
            }
        }
        observe(s);
    }
    trace.final_time = static_cast<double>(steps) * dt;
    trace.u = std::move(u);
    trace.v = std::move(v);
    return trace;
}

SpeedEstimate estimate_speed(const std::vector<FrontSample>& fronts, double burn_in_fraction) {
    if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0)) {
        throw ValidationError("burn-in fraction must lie in [0, 1)");
    }
    if (fronts.empty()) throw ValidationError("need at least 10 front samples after burn-in");
    const double t0 = fronts.front().t;
    const double cut = t0 + burn_in_fraction * (fronts.back().t - t0);
    double st = 0.0, sx = 0.0;
    std::size_t m = 0;
    for (const auto& f : fronts) {
        if (f.t < cut) continue;
        st += f.t;
        sx += f.x;
        ++m;
    }
    if (m < 10) throw ValidationError("need at least 10 front samples after burn-in");
    const double tm = st / static_cast<double>(m);
    const double xm = sx / static_cast<double>(m);
    double stt = 0.0, stx = 0.0;
    for (const auto& f : fronts) {
        if (f.t < cut) continue;
        stt += (f.t - tm) * (f.t - tm);
        stx += (f.t - tm) * (f.x - xm);
    }
    const double slope = stx / stt;
    double sse = 0.0;
    for (const auto& f : fronts) {
        if (f.t < cut) continue;
        const double e = f.x - xm - slope * (f.t - tm);
        sse += e * e;
    }
    const double se = std::sqrt(sse / static_cast<double>(m - 2) / stt);
    return {slope, se, m};
}

SpeedEstimate estimate_speed(const SimTrace& trace, double burn_in_fraction) {
    if (trace.boundary_hit) throw NumericalError("domain too short");
    return estimate_speed(trace.fronts, burn_in_fraction);
}

namespace {

/// u-component of the original-variable wave at x, with the same extension as the PDE data.
double wave_u(const WaveProfile& w, double lambda, double x) {
    const double L = w.grid().half_width();
    if (x < -L) return w.u()[0] * std::exp(lambda * (x + L));
    return w.u_at(x);
}

double shape_error(const SimTrace& tr, const WaveProfile& w, double lambda, double shift) {
    double e = 0.0;
    for (std::size_t i = 0; i < tr.x.size(); ++i) {
        e = std::max(e, std::abs(tr.u[i] - wave_u(w, lambda, tr.x[i] + shift)));
    }
    return e;
}

}  // namespace

TranslationReport wave_translation_test(const ModelParams& p, double c_claimed,
                                        const WaveProfile& wave, double T, double speed_tol,
                                        double shape_tol) {
    require_h1(p);
    if (!std::isfinite(T) || T < 0.0) throw ValidationError("T must be >= 0");
    if (!(c_claimed > 0.0)) throw ValidationError("claimed speed must be positive");
    TranslationReport rep;
    rep.T = T;
    rep.claimed_speed = c_claimed;
    if (T == 0.0) {
        rep.realized_speed = c_claimed;
        rep.speed_ok = rep.shape_ok = true;
        return rep;
    }

    // The tail rate of the wave itself fixes both the extension and the room needed.
    const Grid& g = wave.grid();
    const DecayFit left = fit_decay(wave, TailEnd::minus_inf, Component::u,
                                    default_window(g, TailEnd::minus_inf));
    const double lambda = left.rate;
    const double c_tail = lambda + (1.0 - p.a1()) / lambda;
    const double h = g.spacing();
    const double L = g.half_width();
    const double room = std::ceil((1.5 * c_tail * T + 20.0) / h) * h;

    SimConfig cfg;
    cfg.x_min = -L - room;
    cfg.X = 2.0 * L + room;
    cfg.dx = h;
    cfg.dt = h;
    cfg.T = T;
    cfg.init = InitialKind::wave_profile;
    cfg.wave = WaveInit{wave, lambda};
    cfg.invaded = InvadedSide::left;
    const SimTrace tr = simulate(p, cfg);
    if (tr.fronts.empty()) throw NumericalError("front lost during translation test");

    double xi_half = 0.0;
    if (!level_crossing(g, wave.u(), 0.5, xi_half)) throw NumericalError("wave never reaches 1/2");
    const double s0 = xi_half - tr.fronts.back().x;

    // Golden-section search of the sup error around the level-crossing shift.
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = s0 - 2.0 * h, b = s0 + 2.0 * h;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = shape_error(tr, wave, lambda, x1), f2 = shape_error(tr, wave, lambda, x2);
    for (int it = 0; it < 60 && b - a > 1e-10; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = shape_error(tr, wave, lambda, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = shape_error(tr, wave, lambda, x2);
        }
    }
    rep.shift = 0.5 * (a + b);
    rep.shape_error = std::min({f1, f2, shape_error(tr, wave, lambda, rep.shift)});
    rep.realized_speed = rep.shift / tr.final_time;
    rep.speed_relative_error = std::abs(rep.realized_speed - c_claimed) / c_claimed;
    rep.speed_ok = rep.speed_relative_error <= speed_tol;
    rep.shape_ok = rep.shape_error < shape_tol;
    rep.fronts = tr.fronts;
    return rep;
}

}  // namespace lvwave
