#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "lvwave/asymptotics.hpp"
#include "lvwave/grid.hpp"
#include "lvwave/model_params.hpp"

namespace lvwave {

struct ComparisonTouch {
    double mu = 0.0;
    Component component = Component::u;
    std::size_t node = 0;
    double xi = 0.0;
    double gap = 0.0;  // lower - shifted upper at the touch point
};

struct ComparisonReport {
    double N = 0.0;
    std::vector<double> mu_path;
    std::optional<ComparisonTouch> touch;
    bool ordered = false;
};

/// Replays the sliding argument on [-N, N]: for mu from 2N down to 0 in grid steps, checks
/// lower(xi) <= upper(xi + mu) + slack on [-N, N - mu]. Stops at the first violation.
///
/// Requires lower(-N) <= upper(xi) and lower(xi) <= upper(N) on [-N, N]; throws
/// ValidationError otherwise.
ComparisonReport sliding_comparison(const WaveProfile& upper, const WaveProfile& lower,
                                    const ModelParams& p, double c, double N,
                                    double slack = 1e-12);

struct UniquenessReport {
    /// w2(xi) ~ w1(xi - theta).
    double theta = 0.0;
    double distance = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Aligns w2 onto w1 through their u = 1/2 crossings and measures the sup distance of
/// both components over the nodes where the aligned profile is defined.
UniquenessReport uniqueness_check(const WaveProfile& w1, const WaveProfile& w2, double tol);

struct MonotonicityReport {
    bool strictly_increasing = false;
    std::optional<std::size_t> first_failure_u;
    std::optional<std::size_t> first_failure_v;
    std::size_t failures = 0;
    /// Nodes skipped because both neighbours sit within `resolution` of 0 or 1.
    std::size_t rounding_band_nodes = 0;
    double min_difference_u = 0.0;
    double min_difference_v = 0.0;
    /// Sup-norm of the linearized system evaluated on centered-difference derivatives.
    double derivative_residual = 0.0;
};

/// Checks positive forward differences of u and v between consecutive nodes. Pairs in which
/// the profile is indistinguishable from an equilibrium at `resolution` are not judged.
MonotonicityReport monotonicity_certificate(const WaveProfile& w, const ModelParams& p, double c,
                                            double resolution = 1e-13);

struct SubcriticalDiagnostic {
    double c = 0.0;
    double discriminant = 0.0;
    std::complex<double> root_plus;
    std::complex<double> root_minus;
    bool complex_roots = false;
    /// Outcome of a Newton solve with Dirichlet data (0,0) and (1,1).
    bool newton_converged = false;
    double newton_residual = 0.0;
    std::size_t sign_changes_u = 0;
    double min_u = 0.0;
    bool left_box = false;
    bool evidence = false;
};

/// Characteristic roots of the linearization at (0,0) plus a corroborating BVP attempt.
/// Throws ValidationError("not subcritical") unless 0 < c < 2 sqrt(1 - a1).
SubcriticalDiagnostic subcritical_diagnostic(const ModelParams& p, double c, double L = 30.0,
                                             double h = 0.05);

}  // namespace lvwave
