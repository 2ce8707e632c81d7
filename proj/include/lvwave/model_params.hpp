#pragma once

#include <string_view>

namespace lvwave {

/// Relative tolerance used to classify a computed speed as critical.
inline constexpr double kCriticalSpeedTolerance = 1e-10;

/// Competition coefficients a1, a2 and the growth-rate ratio r.
///
/// Only finiteness is enforced on construction. The ordering 0 < a1 < 1 < a2
/// is a hypothesis checked by validate_hypotheses() / require_h1(), so that a
/// report can be produced for parameters that violate it.
class ModelParams {
public:
    ModelParams(double a1, double a2, double r);

    double a1() const { return a1_; }
    double a2() const { return a2_; }
    double r() const { return r_; }

    bool operator==(const ModelParams&) const = default;

private:
    double a1_;
    double a2_;
    double r_;
};

struct HypothesisReport {
    bool h1 = false;
    bool h2 = false;
    bool h3 = false;
    /// min(a1, 1 - a1, a2 - 1, r): positive iff h1 holds.
    double h1_margin = 0.0;
    /// r(a2 - 1) - (1 - a1): non-strict, zero passes.
    double h2_margin = 0.0;
    /// (1 - a1)(2 - a1 + r) - r(a2 - 1): strict, zero fails.
    double h3_margin = 0.0;

    bool all() const { return h1 && h2 && h3; }
};

HypothesisReport validate_hypotheses(const ModelParams& p);

/// Throws ValidationError unless 0 < a1 < 1 < a2 and r > 0.
void require_h1(const ModelParams& p);
/// Throws ValidationError unless all three hypotheses hold.
void require_hypotheses(const ModelParams& p);

/// c* = 2 sqrt(1 - a1).
double minimal_speed(const ModelParams& p);

enum class SpeedRegime { supercritical, critical, subcritical };

std::string_view to_string(SpeedRegime regime);

struct SpeedSpec {
    double c = 0.0;
    SpeedRegime regime = SpeedRegime::supercritical;
};

/// |c - c*| <= tol * max(1, c*) counts as critical.
SpeedSpec classify_speed(const ModelParams& p, double c,
                         double rel_tol = kCriticalSpeedTolerance);

enum class RightBranch { small, large };

std::string_view to_string(RightBranch branch);

/// Closed-form tail exponents of the wave in the transformed variables.
///
/// lambda_minus is the growth rate of (u, v) out of (0, 0) at -infinity;
/// mu_u_plus / mu_v_plus are the decay rates of 1 - u and 1 - v at +infinity.
struct ExponentSet {
    double lambda_minus = 0.0;
    double mu_u_plus = 0.0;
    double mu_v_plus = 0.0;
    RightBranch branch = RightBranch::small;
    bool critical_polynomial = false;
};

/// Throws SubcriticalSpeedError for a subcritical speed.
ExponentSet predicted_exponents(const ModelParams& p, const SpeedSpec& s);

/// Transformed reaction terms (v already replaced by 1 - v).
inline double reaction_u(const ModelParams& p, double u, double v) {
    return u * (1.0 - p.a1() - u + p.a1() * v);
}

inline double reaction_v(const ModelParams& p, double u, double v) {
    return p.r() * (1.0 - v) * (p.a2() * u - v);
}

/// Partial derivatives of the transformed reaction terms.
struct ReactionJacobian {
    double du_du, du_dv, dv_du, dv_dv;
};

inline ReactionJacobian reaction_jacobian(const ModelParams& p, double u, double v) {
    const double a1 = p.a1();
    const double a2 = p.a2();
    const double r = p.r();
    return {1.0 - a1 - 2.0 * u + a1 * v, a1 * u, a2 * r * (1.0 - v),
            -r * (a2 * u + 1.0 - 2.0 * v)};
}

/// Smallest penalization constant keeping the iteration map monotone on [0,1]^2.
inline double default_beta(const ModelParams& p) {
    const double bu = 1.0 + p.a1();
    const double bv = p.r() * (p.a2() + 1.0);
    return bu > bv ? bu : bv;
}

}  // namespace lvwave
