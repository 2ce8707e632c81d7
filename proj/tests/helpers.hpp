#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "lvwave/construction.hpp"

namespace testing {

/// Converged reference waves, computed once per process.
inline const lvwave::WaveRun& reference_wave(double a1, double a2, double r, double c,
                                             double L = 60.0, double h = 0.02) {
    static std::map<std::tuple<double, double, double, double, double, double>, lvwave::WaveRun> cache;
    static std::mutex mu;
    std::lock_guard lock(mu);
    const auto key = std::make_tuple(a1, a2, r, c, L, h);
    auto it = cache.find(key);
    if (it == cache.end()) {
        const lvwave::ModelParams p(a1, a2, r);
        it = cache.emplace(key, lvwave::compute_wave(p, c, lvwave::Grid::from_spacing(L, h))).first;
    }
    return it->second;
}

/// Least-squares slope of y against x.
inline double line_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace testing
