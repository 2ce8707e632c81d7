#include "lvwave/tridiagonal.hpp"

#include <cmath>

#include "lvwave/errors.hpp"

namespace lvwave {

TridiagonalFactorization::TridiagonalFactorization(std::span<const double> lower,
                                                   std::span<const double> diag,
                                                   std::span<const double> upper)
    : lower_(lower.begin(), lower.end()), pivot_(diag.size()), upper_scaled_(diag.size()) {
    const std::size_t n = diag.size();
    if (lower.size() != n || upper.size() != n || n == 0) {
        throw ValidationError("tridiagonal bands must have equal nonzero length");
    }
    double prev_upper = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = diag[i] - (i > 0 ? lower[i] * prev_upper : 0.0);
        if (d == 0.0 || !std::isfinite(d)) throw NumericalError("singular tridiagonal system");
        pivot_[i] = 1.0 / d;
        upper_scaled_[i] = i + 1 < n ? upper[i] * pivot_[i] : 0.0;
        prev_upper = upper_scaled_[i];
    }
}

void TridiagonalFactorization::solve_in_place(std::span<double> rhs) const {
    const std::size_t n = pivot_.size();
    if (rhs.size() != n) throw ValidationError("right-hand side length mismatch");
    rhs[0] *= pivot_[0];
    for (std::size_t i = 1; i < n; ++i) {
        rhs[i] = (rhs[i] - lower_[i] * rhs[i - 1]) * pivot_[i];
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        rhs[i] -= upper_scaled_[i] * rhs[i + 1];
    }
}

namespace {

Mat2 mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Vec2 mul(const Mat2& a, const Vec2& x) {
    return {a[0] * x[0] + a[1] * x[1], a[2] * x[0] + a[3] * x[1]};
}

Mat2 inverse(const Mat2& a) {
    const double det = a[0] * a[3] - a[1] * a[2];
    if (det == 0.0 || !std::isfinite(det)) throw NumericalError("singular 2x2 block");
    const double inv = 1.0 / det;
    return {a[3] * inv, -a[1] * inv, -a[2] * inv, a[0] * inv};
}

}  // namespace

void solve_block_tridiagonal(std::span<const Mat2> lower, std::span<const Mat2> diag,
                             std::span<const Mat2> upper, std::span<Vec2> rhs) {
    const std::size_t n = diag.size();
    if (lower.size() != n || upper.size() != n || rhs.size() != n || n == 0) {
        throw ValidationError("block bands must have equal nonzero length");
    }
    std::vector<Mat2> c_prime(n);
    Mat2 inv = inverse(diag[0]);
    c_prime[0] = mul(inv, upper[0]);
    rhs[0] = mul(inv, rhs[0]);
    for (std::size_t i = 1; i < n; ++i) {
        const Mat2 lc = mul(lower[i], c_prime[i - 1]);
        const Mat2 d = {diag[i][0] - lc[0], diag[i][1] - lc[1], diag[i][2] - lc[2],
                        diag[i][3] - lc[3]};
        inv = inverse(d);
        if (i + 1 < n) c_prime[i] = mul(inv, upper[i]);
        const Vec2 lr = mul(lower[i], rhs[i - 1]);
        rhs[i] = mul(inv, Vec2{rhs[i][0] - lr[0], rhs[i][1] - lr[1]});
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        const Vec2 cx = mul(c_prime[i], rhs[i + 1]);
        rhs[i][0] -= cx[0];
        rhs[i][1] -= cx[1];
    }
}

}  // namespace lvwave
