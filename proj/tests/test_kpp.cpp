#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "lvwave/errors.hpp"
#include "lvwave/io.hpp"
#include "lvwave/kpp.hpp"

using namespace lvwave;

namespace {

double independent_residual(const KppSpec& s, double c, const SampledFunction& w) {
    const double h = w.grid().spacing();
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < w.size(); ++i) {
        const double d2 = (w[i + 1] - 2.0 * w[i] + w[i - 1]) / (h * h);
        const double d1 = (w[i + 1] - w[i - 1]) / (2.0 * h);
        worst = std::max(worst, std::abs(d2 - c * d1 + s.d1 * w[i] * (1.0 - w[i] / s.b)));
    }
    return worst;
}

}  // namespace

TEST_CASE("logistic front at c = 2") {
    const KppSpec s = KppSpec::logistic(0.5, 1.0);
    const Grid g = Grid::from_spacing(60.0, 0.02);
    const KppWave w = solve_kpp(s, 2.0, g);
    CHECK(independent_residual(s, 2.0, w.profile) < 1e-9);
    CHECK(w.residual < 1e-9);
    for (std::size_t i = 0; i + 1 < w.profile.size(); ++i) CHECK(w.profile[i + 1] > w.profile[i]);
    CHECK(w.profile[g.center()] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(w.profile[0] > 0.0);
    CHECK(w.profile[g.size() - 1] == 1.0);

    // Tail slope from a test-side regression over [-55, -35].
    std::vector<double> x, y;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.node(i) >= -55.0 && g.node(i) <= -35.0) {
            x.push_back(g.node(i));
            y.push_back(std::log(w.profile[i]));
        }
    }
    const double rate = kpp_predicted_rates(s, 2.0).minus_rate;
    CHECK(std::abs(testing::line_slope(x, y) - rate) / rate < 0.02);
}

TEST_CASE("front with ceiling b > 1 and normalization at b/2") {
    const KppSpec s = KppSpec::logistic(0.5, 2.0);
    const Grid g = Grid::from_spacing(40.0, 0.05);
    const KppWave w = solve_kpp(s, 2.2, g);
    CHECK(independent_residual(s, 2.2, w.profile) < 1e-9);
    CHECK(w.profile[g.center()] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w.profile[g.size() - 1] == 2.0);
}

TEST_CASE("phase point away from the origin") {
    const KppSpec s = KppSpec::logistic(0.5, 1.0);
    const Grid g = Grid::from_spacing(40.0, 0.05);
    KppOptions o;
    o.phase_point = -3.3;
    const KppWave w = solve_kpp(s, 2.0, g, o);
    CHECK(w.profile.at(-3.3) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("critical speed front") {
    const KppSpec s = KppSpec::logistic(0.5, 1.0);
    const Grid g = Grid::from_spacing(60.0, 0.02);
    const KppWave w = solve_kpp(s, std::sqrt(2.0), g);
    CHECK(independent_residual(s, std::sqrt(2.0), w.profile) < 1e-9);
    for (std::size_t i = 0; i + 1 < w.profile.size(); ++i) CHECK(w.profile[i + 1] > w.profile[i]);
}

TEST_CASE("initial-guess translation does not change the front") {
    const KppSpec s = KppSpec::logistic(0.5, 1.0);
    const Grid g = Grid::from_spacing(60.0, 0.02);
    const KppWave base = solve_kpp(s, 2.0, g);
    for (double shift : {-5.0, 5.0}) {
        KppOptions o;
        o.initial_shift = shift;
        const KppWave w = solve_kpp(s, 2.0, g, o);
        double d = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) d = std::max(d, std::abs(w.profile[i] - base.profile[i]));
        CHECK(d < 1e-6);
    }
}

TEST_CASE("speed below the KPP minimum is rejected") {
    const KppSpec s = KppSpec::logistic(0.5, 1.0);
    const Grid g = Grid::from_spacing(60.0, 0.02);
    CHECK_THROWS_AS(solve_kpp(s, 1.0, g), SubcriticalSpeedError);
    CHECK_THROWS_WITH(solve_kpp(s, 1.0, g), doctest::Contains("below KPP minimal speed"));
    CHECK_THROWS_AS(kpp_predicted_rates(s, 1.0), SubcriticalSpeedError);
}

TEST_CASE("invalid specs") {
    CHECK_THROWS_AS(KppSpec::logistic(0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(KppSpec::logistic(0.5, -1.0), ValidationError);
    const KppSpec general{0.5, 0.3, 1.0};
    CHECK_FALSE(general.is_logistic());
    CHECK_THROWS_AS(solve_kpp(general, 2.0, Grid::from_spacing(10.0, 0.1)), ValidationError);
}

TEST_CASE("predicted KPP rates") {
    const KppSpec s{0.5, 0.5, 1.0};
    const KppRates a = kpp_predicted_rates(s, 2.0);
    CHECK(a.minus_rate == doctest::Approx(0.2928932).epsilon(1e-6));
    CHECK_FALSE(a.polynomial);
    CHECK(a.plus_rate == doctest::Approx(0.2247449).epsilon(1e-6));
    // Roots of their characteristic equations.
    CHECK(std::abs(a.minus_rate * a.minus_rate - 2.0 * a.minus_rate + 0.5) < 1e-14);
    CHECK(std::abs(a.plus_rate * a.plus_rate + 2.0 * a.plus_rate - 0.5) < 1e-14);

    const KppRates b = kpp_predicted_rates(s, std::sqrt(2.0));
    CHECK(b.minus_rate == doctest::Approx(0.7071068).epsilon(1e-6));
    CHECK(b.polynomial);
    CHECK(b.plus_rate == doctest::Approx(0.2928932).epsilon(1e-6));

    const KppRates z = kpp_predicted_rates(KppSpec{0.5, 0.0, 1.0}, 2.0);
    CHECK(z.plus_rate == 0.0);
}

TEST_CASE("KPP profile CSV carries the spec in a comment line") {
    const KppSpec s = KppSpec::logistic(0.5, 1.0);
    const KppWave w = solve_kpp(s, 2.0, Grid::from_spacing(10.0, 0.1));
    std::ostringstream os;
    write_kpp_csv(os, w);
    std::istringstream is(os.str());
    std::string first, second;
    std::getline(is, first);
    std::getline(is, second);
    CHECK(first == "# d1=0.5 d2=0.5 b=1 c=2");
    CHECK(second == "xi,u,v");
    std::istringstream again(os.str());
    const WaveProfile back = read_profile_csv(again);
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back.u()[i] == w.profile[i]);
        CHECK(back.v()[i] == w.profile[i]);
    }
}
