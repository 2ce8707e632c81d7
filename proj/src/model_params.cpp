#include "lvwave/model_params.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lvwave/errors.hpp"

namespace lvwave {

ModelParams::ModelParams(double a1, double a2, double r) : a1_(a1), a2_(a2), r_(r) {
    if (!std::isfinite(a1) || !std::isfinite(a2) || !std::isfinite(r)) {
        throw ValidationError("model parameters must be finite");
    }
}

HypothesisReport validate_hypotheses(const ModelParams& p) {
    const double a1 = p.a1();
    const double a2 = p.a2();
    const double r = p.r();

    HypothesisReport rep;
    rep.h1_margin = std::min({a1, 1.0 - a1, a2 - 1.0, r});
    rep.h1 = rep.h1_margin > 0.0;

    rep.h2_margin = r * (a2 - 1.0) - (1.0 - a1);
    rep.h2 = rep.h2_margin >= 0.0;

    rep.h3_margin = (1.0 - a1) * (2.0 - a1 + r) - r * (a2 - 1.0);
    rep.h3 = rep.h3_margin > 0.0;
    return rep;
}

void require_h1(const ModelParams& p) {
    if (!validate_hypotheses(p).h1) {
        throw ValidationError("hypothesis H1 violated: need 0 < a1 < 1 < a2 and r > 0");
    }
}

void require_hypotheses(const ModelParams& p) {
    const auto rep = validate_hypotheses(p);
    if (!rep.h1) require_h1(p);
    if (!rep.h2) throw ValidationError("hypothesis H2 violated: need 1 - a1 <= r(a2 - 1)");
    if (!rep.h3) {
        throw ValidationError("hypothesis H3 violated: need r(a2 - 1) < (1 - a1)(2 - a1 + r)");
    }
}

double minimal_speed(const ModelParams& p) {
    require_h1(p);
    return 2.0 * std::sqrt(1.0 - p.a1());
}

std::string_view to_string(SpeedRegime regime) {
    switch (regime) {
        case SpeedRegime::supercritical: return "supercritical";
        case SpeedRegime::critical: return "critical";
        case SpeedRegime::subcritical: return "subcritical";
    }
    return "unknown";
}

std::string_view to_string(RightBranch branch) {
    return branch == RightBranch::small ? "small" : "large";
}

SpeedSpec classify_speed(const ModelParams& p, double c, double rel_tol) {
    if (!std::isfinite(c) || c <= 0.0) {
        throw ValidationError("wave speed must be a positive finite number");
    }
    const double cstar = minimal_speed(p);
    SpeedSpec s{c, SpeedRegime::supercritical};
    if (std::abs(c - cstar) <= rel_tol * std::max(1.0, cstar)) {
        s.regime = SpeedRegime::critical;
    } else if (c < cstar) {
        s.regime = SpeedRegime::subcritical;
    }
    return s;
}

ExponentSet predicted_exponents(const ModelParams& p, const SpeedSpec& s) {
    require_hypotheses(p);
    if (s.regime == SpeedRegime::subcritical) {
        throw SubcriticalSpeedError("no monotone wave below c* = 2 sqrt(1 - a1)");
    }
    const double a1 = p.a1();
    const double q = p.r() * (p.a2() - 1.0);  // decay coefficient of the v-equation at +inf
    const double c = s.c;

    ExponentSet e;
    e.branch = q <= 1.0 ? RightBranch::small : RightBranch::large;
    e.critical_polynomial = s.regime == SpeedRegime::critical;

    if (s.regime == SpeedRegime::critical) {
        const double root = std::sqrt(1.0 - a1);
        e.lambda_minus = root;
        e.mu_v_plus = std::sqrt(1.0 - a1 + q) - root;
        e.mu_u_plus = e.branch == RightBranch::small ? e.mu_v_plus : std::sqrt(2.0 - a1) - root;
    } else {
        e.lambda_minus = (c - std::sqrt(c * c - 4.0 * (1.0 - a1))) / 2.0;
        e.mu_v_plus = (std::sqrt(c * c + 4.0 * q) - c) / 2.0;
        e.mu_u_plus =
            e.branch == RightBranch::small ? e.mu_v_plus : (std::sqrt(c * c + 4.0) - c) / 2.0;
    }
    return e;
}

}  // namespace lvwave
