#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "lvwave/bvp.hpp"
#include "lvwave/construction.hpp"
#include "lvwave/errors.hpp"

using namespace lvwave;

namespace {

const ModelParams kRef(0.5, 2.0, 0.5);

Grid default_grid() { return Grid::from_spacing(60.0, 0.02); }

}  // namespace

TEST_CASE("choose_l takes the midpoint of the admissible interval") {
    const LInterval a = l_interval(kRef);
    CHECK(a.lo == 0.0);
    CHECK(a.hi == 0.5);
    CHECK(choose_l(kRef) == doctest::Approx(0.25));

    const ModelParams large(0.2, 2.0, 2.0);
    CHECK(l_interval(large).lo == doctest::Approx(1.2 / 2.8));
    CHECK(choose_l(large) == doctest::Approx(0.5 * (1.2 / 2.8 + 0.8)));
    CHECK(choose_l(large) == doctest::Approx(0.6142857).epsilon(1e-6));

    const ModelParams strong(0.5, 2.0, 5.0);
    CHECK(l_interval(strong).lo == doctest::Approx(4.5 / 5.5));
    CHECK_THROWS_AS(choose_l(strong), ValidationError);
}

TEST_CASE("ordered pair at the reference point") {
    const Grid g = default_grid();
    const OrderedPair pair = build_pair(kRef, 2.0, g, {0.25, std::nullopt});
    CHECK(pair.nu == 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(pair.lower.u()[i] <= pair.upper.u()[i]);
        CHECK(pair.lower.v()[i] <= pair.upper.v()[i]);
    }
    CHECK(pair.lower.u()[g.center()] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pair.lower.v()[g.center()] == doctest::Approx(0.5).epsilon(1e-12));

    // Clamped to (1, 1) from the u-corner on.
    REQUIRE(pair.corner_u);
    REQUIRE(pair.corner_v);
    CHECK(*pair.corner_v <= *pair.corner_u);
    for (std::size_t i = *pair.corner_u; i < g.size(); ++i) {
        CHECK(pair.upper.u()[i] == 1.0);
        CHECK(pair.upper.v()[i] == 1.0);
    }
    CHECK(pair.upper.u()[g.size() - 1] == 1.0);
    CHECK(pair.lower.u()[g.size() - 1] == 1.0);

    // The left ends sit on the pure exponential tail e^{lambda xi} of the KPP fronts.
    const double lam = (2.0 - std::sqrt(2.0)) / 2.0;
    const std::size_t i40 = 1000;  // xi = -40
    CHECK(g.node(i40) == doctest::Approx(-40.0));
    const double decay = std::exp(-20.0 * lam);
    CHECK(pair.lower.u()[0] == doctest::Approx(pair.lower.u()[i40] * decay).epsilon(0.02));
    CHECK(pair.upper.u()[0] == doctest::Approx(pair.upper.u()[i40] * decay).epsilon(0.02));
    CHECK(pair.upper.v()[0] == doctest::Approx(1.25 * pair.upper.u()[0]));
    CHECK(pair.lower.u()[0] < 1e-7);
}

TEST_CASE("pair end values shrink below 1e-8 once L is long enough") {
    const OrderedPair pair = build_pair(kRef, 2.0, Grid::from_spacing(70.0, 0.02), {0.25, std::nullopt});
    CHECK(pair.lower.u()[0] < 1e-8);
    CHECK(pair.upper.u()[0] < 1e-8);
    CHECK(pair.upper.v()[0] < 1e-8);
}

TEST_CASE("upper and lower inequalities hold pointwise") {
    const Grid g = default_grid();
    const OrderedPair pair = build_pair(kRef, 2.0, g, {0.25, std::nullopt});
    const InequalityReport rep = check_def2_inequalities(pair, kRef, 2.0);
    CHECK(rep.slack == doctest::Approx(10 * 0.02 * 0.02));
    CHECK(rep.upper_ok);
    CHECK(rep.lower_ok);
    CHECK(rep.corners_ok);
    REQUIRE(rep.corner_v);
    CHECK(rep.corner_v->left_derivative >= rep.corner_v->right_derivative);

    // Swapping the roles breaks the signs.
    OrderedPair swapped = pair;
    std::swap(swapped.upper, swapped.lower);
    swapped.corner_u.reset();
    swapped.corner_v.reset();
    const InequalityReport bad = check_def2_inequalities(swapped, kRef, 2.0);
    // Here r (a2 - 1) = 1 - a1, so (g, g) solves the system exactly and only the
    // lower inequality can fail.
    CHECK_FALSE(bad.ok());
    CHECK_FALSE(bad.lower_ok);
    CHECK(bad.lower_worst_u < -1.0);
}

TEST_CASE("constant (1,1) upper profile has zero residual") {
    const Grid g = Grid::from_spacing(10.0, 0.1);
    const std::vector<double> ones(g.size(), 1.0);
    const auto r = discrete_residual(WaveProfile(g, ones, ones), kRef, 2.0);
    CHECK(r.max() == 0.0);
}

TEST_CASE("pair construction in the large branch and at the critical speed") {
    const ModelParams large(0.2, 2.0, 2.0);
    const OrderedPair a = build_pair(large, 2.0, default_grid(), {choose_l(large), std::nullopt});
    CHECK(check_def2_inequalities(a, large, 2.0).ok());
    const OrderedPair b = build_pair(kRef, std::sqrt(2.0), default_grid(), {0.25, std::nullopt});
    CHECK(check_def2_inequalities(b, kRef, std::sqrt(2.0)).ok());
}

TEST_CASE("shift search") {
    const Grid g = Grid::from_spacing(30.0, 0.05);
    std::vector<double> u(g.size()), v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        u[i] = 1.0 / (1.0 + std::exp(-g.node(i)));
        v[i] = 1.0 / (1.0 + std::exp(-1.2 * g.node(i)));
    }
    const WaveProfile upper(g, u, v);
    CHECK(find_shift_nu(upper, upper.shifted(-1.0)) == 0.0);

    // lower(xi) = upper(xi + 3): only a lead of 3 or more restores the ordering.
    const double nu = find_shift_nu(upper, upper.shifted(3.0));
    CHECK(nu >= 3.0);
    CHECK(nu <= 3.5);

    // A lower profile whose left tail sits above the upper's tail can never be dominated.
    std::vector<double> lu(g.size(), 0.6), lv(g.size(), 0.6);
    lu.back() = lv.back() = 1.0;
    CHECK_THROWS_WITH(find_shift_nu(WaveProfile(g, std::vector<double>(g.size(), 0.5), std::vector<double>(g.size(), 0.5)),
                                    WaveProfile(g, lu, lv)),
                      doctest::Contains("pair cannot be ordered"));
}

TEST_CASE("monotone iteration converges between the pair") {
    const Grid g = default_grid();
    const OrderedPair pair = build_pair(kRef, 2.0, g, {0.25, std::nullopt});
    IterationOptions o;
    o.record_nodes = {100, 2000, g.center(), 4000, 5900};
    const IterationResult res = monotone_iterate(pair, kRef, 2.0, o);
    const IterationTrace& t = res.trace;
    CHECK(t.beta == doctest::Approx(1.5));
    CHECK(t.iterations > 1);
    CHECK(t.converged_residual.max() < 1e-9);
    CHECK(t.differences.back() < 1e-10);
    for (std::size_t k = 0; k < t.monotone.size(); ++k) {
        CHECK(t.monotone[k]);
        CHECK(t.sandwiched[k]);
    }
    // Per-node sequences decrease.
    for (std::size_t k = 0; k + 1 < t.recorded_u.size(); ++k) {
        for (std::size_t j = 0; j < o.record_nodes.size(); ++j) {
            CHECK(t.recorded_u[k + 1][j] <= t.recorded_u[k][j] + 1e-12);
            CHECK(t.recorded_v[k + 1][j] <= t.recorded_v[k][j] + 1e-12);
        }
    }
    // Residuals settle: after the first step no residual exceeds 10x the one before it.
    for (std::size_t k = 1; k + 1 < t.residuals.size(); ++k) {
        CHECK(t.residuals[k + 1] <= 10.0 * t.residuals[k] + 1e-9);
    }

    const WaveProfile& w = res.wave;
    CHECK(w.u()[g.center()] == doctest::Approx(0.5).epsilon(1e-12));
    const auto r = discrete_residual(w, kRef, 2.0);
    CHECK(r.u < 1e-9);
    CHECK(r.v < 1e-9);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        CHECK(w.u()[i + 1] > w.u()[i]);
        CHECK(w.v()[i + 1] > w.v()[i]);
    }
}

TEST_CASE("un-normalized iterate stays between the pair") {
    const Grid g = default_grid();
    const OrderedPair pair = build_pair(kRef, 2.0, g, {0.25, std::nullopt});
    IterationOptions o;
    o.normalize = false;
    const IterationResult res = monotone_iterate(pair, kRef, 2.0, o);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(res.wave.u()[i] >= pair.lower.u()[i] - 1e-12);
        CHECK(res.wave.u()[i] <= pair.upper.u()[i] + 1e-12);
        CHECK(res.wave.v()[i] >= pair.lower.v()[i] - 1e-12);
        CHECK(res.wave.v()[i] <= pair.upper.v()[i] + 1e-12);
    }
}

TEST_CASE("ascending iteration from the lower solution reaches the same wave") {
    const Grid g = default_grid();
    const OrderedPair pair = build_pair(kRef, 2.0, g, {0.25, std::nullopt});
    const IterationResult down = monotone_iterate(pair, kRef, 2.0);
    IterationOptions o;
    o.start = IterationStart::lower;
    const IterationResult up = monotone_iterate(pair, kRef, 2.0, o);
    double d = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        d = std::max({d, std::abs(down.wave.u()[i] - up.wave.u()[i]),
                      std::abs(down.wave.v()[i] - up.wave.v()[i])});
    }
    CHECK(d < 1e-7);
}

TEST_CASE("equilibrium pair is a fixed point") {
    const Grid g = Grid::from_spacing(10.0, 0.1);
    const std::vector<double> ones(g.size(), 1.0);
    const WaveProfile one(g, ones, ones);
    const OrderedPair pair{one, one, 0.25, 0.0, std::nullopt, std::nullopt};
    IterationOptions o;
    o.normalize = false;
    const IterationResult res = monotone_iterate(pair, kRef, 2.0, o);
    CHECK(res.trace.iterations == 1);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(res.wave.u()[i] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("iteration rejects small beta and reports broken ordering") {
    const Grid g = Grid::from_spacing(30.0, 0.05);
    const OrderedPair pair = build_pair(kRef, 2.0, g, {0.25, std::nullopt});
    IterationOptions o;
    o.beta = 1.0;
    CHECK_THROWS_AS(monotone_iterate(pair, kRef, 2.0, o), ValidationError);

    // With the upper solution as both bounds the first descent leaves the sandwich.
    const OrderedPair wrong{pair.upper, pair.upper, 0.25, 0.0, std::nullopt, std::nullopt};
    try {
        monotone_iterate(wrong, kRef, 2.0);
        FAIL("expected an iteration error");
    } catch (const IterationError& e) {
        CHECK(std::string(e.what()).find("quasimonotonicity broken") != std::string::npos);
        CHECK_FALSE(e.trace.sandwiched.back());
        CHECK(e.trace.iterations >= 1);
    }

    IterationOptions few;
    few.max_iterations = 3;
    CHECK_THROWS_AS(monotone_iterate(pair, kRef, 2.0, few), IterationError);
}

TEST_CASE("refinement changes the wave at second order") {
    std::vector<WaveProfile> waves;
    for (double h : {0.08, 0.04, 0.02}) {
        waves.push_back(compute_wave(kRef, 2.0, Grid::from_spacing(60.0, h)).result.wave);
    }
    std::vector<double> diffs;
    for (std::size_t k = 0; k + 1 < waves.size(); ++k) {
        double d = 0.0;
        for (std::size_t i = 0; i < waves[k].size(); ++i) {
            d = std::max({d, std::abs(waves[k].u()[i] - waves[k + 1].u()[2 * i]),
                          std::abs(waves[k].v()[i] - waves[k + 1].v()[2 * i])});
        }
        diffs.push_back(d);
    }
    CHECK(diffs[0] / diffs[1] >= 3.5);
    CHECK(diffs[0] / diffs[1] <= 4.5);
}

TEST_CASE("compute_wave refuses the subcritical range and failed hypotheses") {
    const Grid g = default_grid();
    CHECK_THROWS_AS(compute_wave(kRef, 1.0, g), SubcriticalSpeedError);
    CHECK_THROWS_AS(compute_wave(ModelParams(0.5, 2.0, 5.0), 2.0, g), ValidationError);
}
