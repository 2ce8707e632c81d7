#include "lvwave/asymptotics.hpp"

#include <array>
#include <cmath>
#include <string>

#include "lvwave/errors.hpp"

namespace lvwave {

std::string_view to_string(TailEnd end) {
    return end == TailEnd::minus_inf ? "minus_inf" : "plus_inf";
}

std::string_view to_string(Component c) { return c == Component::u ? "u" : "v"; }

FitWindow default_window(const Grid& grid, TailEnd end) {
    const double L = grid.half_width();
    if (end == TailEnd::minus_inf) return {-L + 5.0, -L + 25.0};
    return {L - 25.0, L - 5.0};
}

namespace {

/// Solves the k x k normal equations by Gaussian elimination with partial pivoting.
template <std::size_t K>
std::array<double, K> least_squares(std::span<const std::array<double, K>> rows,
                                    std::span<const double> y) {
    std::array<std::array<double, K + 1>, K> m{};
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t i = 0; i < K; ++i) {
            for (std::size_t j = 0; j < K; ++j) m[i][j] += rows[r][i] * rows[r][j];
            m[i][K] += rows[r][i] * y[r];
        }
    }
    for (std::size_t col = 0; col < K; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < K; ++i) {
            if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
        }
        std::swap(m[col], m[piv]);
        if (m[col][col] == 0.0) throw NumericalError("singular least-squares system");
        for (std::size_t i = col + 1; i < K; ++i) {
            const double f = m[i][col] / m[col][col];
            for (std::size_t j = col; j <= K; ++j) m[i][j] -= f * m[col][j];
        }
    }
    std::array<double, K> x{};
    for (std::size_t i = K; i-- > 0;) {
        double s = m[i][K];
        for (std::size_t j = i + 1; j < K; ++j) s -= m[i][j] * x[j];
        x[i] = s / m[i][i];
    }
    return x;
}

template <std::size_t K>
double rms(std::span<const std::array<double, K>> rows, std::span<const double> y,
           const std::array<double, K>& x) {
    double s = 0.0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        double f = 0.0;
        for (std::size_t i = 0; i < K; ++i) f += rows[r][i] * x[i];
        s += (y[r] - f) * (y[r] - f);
    }
    return std::sqrt(s / static_cast<double>(rows.size()));
}

}  // namespace

DecayFit fit_decay(std::span<const double> xi, std::span<const double> q, TailEnd end,
                   Component component) {
    if (xi.size() != q.size()) throw ValidationError("fit data length mismatch");
    if (xi.size() < 4) throw ValidationError("fit window needs at least 4 nodes");
    std::vector<double> y(q.size());
    std::vector<std::array<double, 2>> line(q.size());
    std::vector<std::array<double, 3>> joint(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (!(q[i] > 0.0) || !std::isfinite(q[i])) {
            throw NumericalError("window too close to equilibrium/floor");
        }
        if (xi[i] == 0.0) throw ValidationError("fit window must not contain xi = 0");
        y[i] = std::log(q[i]);
        line[i] = {1.0, xi[i]};
        joint[i] = {1.0, xi[i], std::log(std::abs(xi[i]))};
    }
    const auto lf = least_squares<2>(line, y);
    const auto jf = least_squares<3>(joint, y);

    DecayFit fit;
    fit.end = end;
    fit.component = component;
    fit.window = {xi.front(), xi.back()};
    fit.line_rate = std::abs(lf[1]);
    fit.log_coefficient = jf[2];
    fit.polynomial_detected = jf[2] >= 0.7 && jf[2] <= 1.3;
    if (fit.polynomial_detected) {
        fit.rate = std::abs(jf[1]);
        fit.amplitude = std::exp(jf[0]);
        fit.fit_residual = rms<3>(joint, y, jf);
    } else {
        fit.rate = std::abs(lf[1]);
        fit.amplitude = std::exp(lf[0]);
        fit.fit_residual = rms<2>(line, y, lf);
    }
    return fit;
}

namespace {

struct WindowNodes {
    std::size_t first;
    std::size_t last;
};

WindowNodes window_nodes(const Grid& grid, const FitWindow& w) {
    if (!(w.a < w.b)) throw ValidationError("fit window must have a < b");
    const double h = grid.spacing();
    const double L = grid.half_width();
    const double sa = std::ceil((w.a + L) / h - 1e-9);
    const double sb = std::floor((w.b + L) / h + 1e-9);
    const double lo = static_cast<double>(kWindowEdgeNodes);
    const double hi = static_cast<double>(grid.size() - 1 - kWindowEdgeNodes);
    if (sa < lo || sb > hi || sb - sa < 3.0) {
        throw ValidationError("fit window must stay " + std::to_string(kWindowEdgeNodes) +
                              " nodes inside the grid");
    }
    return {static_cast<std::size_t>(sa), static_cast<std::size_t>(sb)};
}

double tail_quantity(const WaveProfile& profile, TailEnd end, Component c, std::size_t i) {
    const double w = c == Component::u ? profile.u()[i] : profile.v()[i];
    return end == TailEnd::minus_inf ? w : 1.0 - w;
}

}  // namespace

DecayFit fit_decay(const WaveProfile& profile, TailEnd end, Component component,
                   const FitWindow& window) {
    const Grid& grid = profile.grid();
    const WindowNodes wn = window_nodes(grid, window);
    std::vector<double> xi, q;
    for (std::size_t i = wn.first; i <= wn.last; ++i) {
        xi.push_back(grid.node(i));
        q.push_back(tail_quantity(profile, end, component, i));
    }
    return fit_decay(xi, q, end, component);
}

FitWindow adaptive_window(const WaveProfile& profile, TailEnd end, Component component,
                          double floor) {
    const Grid& grid = profile.grid();
    FitWindow w = default_window(grid, end);
    if (end == TailEnd::minus_inf) return w;
    const WindowNodes wn = window_nodes(grid, w);
    std::size_t deep = wn.last;
    while (deep > 0 && tail_quantity(profile, end, component, deep) < floor) --deep;
    if (deep >= wn.last) return w;
    const double width = w.b - w.a;
    return {grid.node(deep) - width, grid.node(deep)};
}

std::vector<RateComparison> compare_rates(const WaveProfile& profile, const ModelParams& p,
                                          double c, double tol) {
    const SpeedSpec s = classify_speed(p, c);
    const ExponentSet ex = predicted_exponents(p, s);
    std::vector<RateComparison> out;
    for (TailEnd end : {TailEnd::minus_inf, TailEnd::plus_inf}) {
        for (Component comp : {Component::u, Component::v}) {
            RateComparison rc;
            rc.end = end;
            rc.component = comp;
            if (end == TailEnd::minus_inf) {
                rc.predicted = ex.lambda_minus;
                rc.expected_polynomial = ex.critical_polynomial;
            } else {
                rc.predicted = comp == Component::u ? ex.mu_u_plus : ex.mu_v_plus;
            }
            rc.fit = fit_decay(profile, end, comp, adaptive_window(profile, end, comp));
            rc.fitted = rc.fit.rate;
            rc.relative_error = std::abs(rc.fitted - rc.predicted) / rc.predicted;
            rc.pass = rc.relative_error <= tol;
            if (end == TailEnd::minus_inf && rc.fit.polynomial_detected != rc.expected_polynomial) {
                rc.pass = false;
            }
            out.push_back(rc);
        }
    }
    return out;
}

}  // namespace lvwave
