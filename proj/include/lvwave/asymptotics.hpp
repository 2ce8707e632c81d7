#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "lvwave/grid.hpp"
#include "lvwave/model_params.hpp"

namespace lvwave {

enum class TailEnd { minus_inf, plus_inf };
enum class Component { u, v };

std::string_view to_string(TailEnd end);
std::string_view to_string(Component c);

struct FitWindow {
    double a = 0.0;
    double b = 0.0;
};

/// [-L + 5, -L + 25] at -infinity, [L - 25, L - 5] at +infinity.
FitWindow default_window(const Grid& grid, TailEnd end);

/// Nodes at least this far from either end of the grid may enter a fit.
inline constexpr std::size_t kWindowEdgeNodes = 5;

struct DecayFit {
    TailEnd end = TailEnd::minus_inf;
    Component component = Component::u;
    double rate = 0.0;
    bool polynomial_detected = false;
    FitWindow window;
    /// RMS of the residual of the accepted fit in log space.
    double fit_residual = 0.0;
    double amplitude = 0.0;
    /// Coefficient of log|xi| in the joint fit; near 1 for a linear-times-exponential tail.
    double log_coefficient = 0.0;
    /// Rate from the plain line fit, before any polynomial correction.
    double line_rate = 0.0;
};

/// Fits q ~ A e^{rate * xi} at -infinity (q = component) or q ~ A e^{-rate * xi} at +infinity
/// (q = 1 - component) over the window.
///
/// A joint least-squares fit log q = a + s xi + p log|xi| runs alongside the line fit; the
/// tail is flagged polynomial when p lies in [0.7, 1.3], in which case the rate and
/// amplitude come from the joint fit.
DecayFit fit_decay(const WaveProfile& profile, TailEnd end, Component component,
                   const FitWindow& window);

/// Same fit on raw tail data: q must already be the positive quantity being fitted.
DecayFit fit_decay(std::span<const double> xi, std::span<const double> q, TailEnd end,
                   Component component = Component::u);

/// Default window, moved inward at +infinity when 1 - component drops below `floor`
/// inside it (the deepest node kept is the last one with 1 - component >= floor).
FitWindow adaptive_window(const WaveProfile& profile, TailEnd end, Component component,
                          double floor = 1e-10);

struct RateComparison {
    TailEnd end = TailEnd::minus_inf;
    Component component = Component::u;
    double predicted = 0.0;
    double fitted = 0.0;
    double relative_error = 0.0;
    bool expected_polynomial = false;
    bool pass = false;
    DecayFit fit;
};

/// Four comparisons ordered (-inf, u), (-inf, v), (+inf, u), (+inf, v).
/// A -infinity comparison also fails when the polynomial flag disagrees with the regime.
std::vector<RateComparison> compare_rates(const WaveProfile& profile, const ModelParams& p,
                                          double c, double tol);

}  // namespace lvwave
