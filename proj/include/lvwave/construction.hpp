#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lvwave/bvp.hpp"
#include "lvwave/errors.hpp"
#include "lvwave/grid.hpp"
#include "lvwave/kpp.hpp"
#include "lvwave/model_params.hpp"

namespace lvwave {

/// Admissible range [lo, hi) for the upper-solution parameter l.
struct LInterval {
    double lo;
    double hi;
};

LInterval l_interval(const ModelParams& p);

/// Midpoint of [max(0, lo), hi); throws when the interval is empty.
double choose_l(const ModelParams& p);

struct UpperLowerConfig {
    double l = 0.0;
    /// Left shift of the upper solution; searched when absent.
    std::optional<double> nu;
};

/// Upper and lower solutions, ordered at every node.
///
/// The upper solution is (min(H, 1), min((1 + l) H, 1)) with H the KPP front of
/// ceiling (1 - a1)/(1 - a1 - l), translated left by nu; the lower solution is
/// (g, g) with g the KPP front of ceiling 1.
struct OrderedPair {
    WaveProfile upper;
    WaveProfile lower;
    double l = 0.0;
    double nu = 0.0;
    /// First node where the v-component of the upper solution is clamped to 1.
    std::optional<std::size_t> corner_v;
    /// First node where the u-component of the upper solution is clamped to 1.
    std::optional<std::size_t> corner_u;
};

OrderedPair build_pair(const ModelParams& p, double c, const Grid& grid,
                       const UpperLowerConfig& cfg, const KppOptions& kpp = {});

/// Smallest nu in {0, 0.5, 1, ...} with upper(xi + nu) >= lower(xi) at every node.
/// Throws ValidationError("pair cannot be ordered") when no nu <= 2L works.
double find_shift_nu(const WaveProfile& upper, const WaveProfile& lower);

/// True when upper(xi + nu) >= lower(xi) - slack at every node (clamped extension).
bool dominates_after_shift(const WaveProfile& upper, const WaveProfile& lower, double nu,
                           double slack = 1e-12);

struct CornerCheck {
    std::size_t node = 0;
    double left_derivative = 0.0;
    double right_derivative = 0.0;
    bool ok = false;
};

struct InequalityReport {
    /// max over checked nodes of the upper solution's residuals (should be <= slack).
    double upper_worst_u = 0.0;
    double upper_worst_v = 0.0;
    /// min over checked nodes of the lower solution's residuals (should be >= -slack).
    double lower_worst_u = 0.0;
    double lower_worst_v = 0.0;
    std::size_t upper_worst_node = 0;
    std::size_t lower_worst_node = 0;
    double slack = 0.0;
    std::optional<CornerCheck> corner_v;
    std::optional<CornerCheck> corner_u;
    bool upper_ok = false;
    bool lower_ok = false;
    bool corners_ok = false;

    bool ok() const { return upper_ok && lower_ok && corners_ok; }
};

/// Pointwise check of the upper/lower differential inequalities and the corner jumps.
/// Default slack is 10 h^2.
InequalityReport check_def2_inequalities(const OrderedPair& pair, const ModelParams& p, double c,
                                   std::optional<double> slack = std::nullopt);

enum class IterationStart { upper, lower };

struct IterationOptions {
    /// Penalization constant; default max(1 + a1, r(a2 + 1)). Must not be smaller.
    std::optional<double> beta;
    double difference_tolerance = 1e-10;
    double residual_tolerance = 1e-9;
    long max_iterations = 100000;
    /// Allowed floating-point violation of the sandwich ordering.
    double ordering_slack = 1e-12;
    IterationStart start = IterationStart::upper;
    /// Translate the converged wave so that u(0) = 1/2.
    bool normalize = true;
    /// Nodes whose per-iteration values are recorded in the trace.
    std::vector<std::size_t> record_nodes;
};

struct IterationTrace {
    long iterations = 0;
    double beta = 0.0;
    std::vector<double> residuals;
    std::vector<double> differences;
    std::vector<bool> monotone;
    std::vector<bool> sandwiched;
    /// recorded[k][j] = u at record_nodes[j] after iteration k (k = 0 is the start).
    std::vector<std::vector<double>> recorded_u;
    std::vector<std::vector<double>> recorded_v;
    /// Left Dirichlet data used by the iteration.
    double left_u = 0.0;
    double left_v = 0.0;
    ResidualNorms converged_residual;
    ResidualNorms final_residual;
    /// Translation applied by the normalization (xi of the u = 1/2 crossing before it).
    double normalization_shift = 0.0;
    int normalization_newton_steps = 0;
};

/// Failure of the monotone iteration; carries the trace up to the failure.
class IterationError : public NumericalError {
public:
    IterationError(const std::string& what, IterationTrace t)
        : NumericalError(what), trace(std::move(t)) {}

    IterationTrace trace;
};

struct IterationResult {
    WaveProfile wave;
    IterationTrace trace;
};

/// Monotone iteration between the ordered pair.
///
/// Each step solves w'' - c w' - beta w = -beta U_k - F(U_k) for both components with
/// the upper/lower end values as Dirichlet data. Stops when both the successive sup
/// difference and the discrete residual fall below tolerance.
IterationResult monotone_iterate(const OrderedPair& pair, const ModelParams& p, double c,
                                 const IterationOptions& opts = {});

/// Translates a converged wave so that u(0) = 1/2 and restores the discrete residual by
/// Newton with a phase condition. Returns the wave and the crossing location it removed.
struct NormalizedWave {
    WaveProfile wave;
    double shift = 0.0;
    int newton_steps = 0;
};

NormalizedWave normalize_wave(const WaveProfile& wave, const ModelParams& p, double c);

/// Convenience: construct the pair with the default l, iterate, normalize.
struct WaveRun {
    OrderedPair pair;
    IterationResult result;
};

WaveRun compute_wave(const ModelParams& p, double c, const Grid& grid,
                     std::optional<double> l = std::nullopt, const IterationOptions& opts = {});

}  // namespace lvwave
