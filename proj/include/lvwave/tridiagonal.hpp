#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace lvwave {

/// LU factorization (no pivoting) of a tridiagonal matrix, reusable for many right-hand sides.
///
/// Row i reads lower[i] * x[i-1] + diag[i] * x[i] + upper[i] * x[i+1];
/// lower[0] and upper[n-1] are ignored.
class TridiagonalFactorization {
public:
    TridiagonalFactorization(std::span<const double> lower, std::span<const double> diag,
                             std::span<const double> upper);

    std::size_t size() const { return pivot_.size(); }

    /// Overwrites `rhs` with the solution.
    void solve_in_place(std::span<double> rhs) const;

private:
    std::vector<double> lower_;
    std::vector<double> pivot_;        // reciprocal of the eliminated diagonal
    std::vector<double> upper_scaled_; // upper[i] / eliminated diagonal
};

using Mat2 = std::array<double, 4>;  // row-major {a00, a01, a10, a11}
using Vec2 = std::array<double, 2>;

/// Block-tridiagonal solve with 2x2 blocks (block Thomas algorithm).
/// `rhs` is overwritten with the solution.
void solve_block_tridiagonal(std::span<const Mat2> lower, std::span<const Mat2> diag,
                             std::span<const Mat2> upper, std::span<Vec2> rhs);

}  // namespace lvwave
