#pragma once

#include <span>
#include <vector>

namespace tvs::linalg {

/// Reciprocal 1-norm condition numbers below this are treated as singular.
inline constexpr double kSingularRcond = 1e-12;

/// Symmetric Toeplitz matrix [acov[|i-j|]] of size n, row-major.
std::vector<double> toeplitz(std::span<const double> acov, int n);

/// Cholesky factor of a symmetric Toeplitz matrix, reusable for every leading
/// block: the factor of the leading p x p block is the leading block of L.
class NestedCholesky {
public:
    NestedCholesky() = default;

    /// Factors [acov[|i-j|]]_{i,j < max_order}. Stops at the first non-positive pivot.
    void factor(std::span<const double> acov, int max_order);

    /// Largest p for which the leading p x p block is positive definite.
    int positive_order() const noexcept { return positive_order_; }

    /// Solves the leading p x p system. Requires p <= positive_order().
    void solve(int p, std::span<const double> rhs, std::span<double> out) const;

    /// Estimated reciprocal 1-norm condition number of the leading p x p block.
    double rcond(int p) const;

private:
    int n_ = 0;
    int positive_order_ = 0;
    std::vector<double> l_;    // row-major lower factor, leading dimension n_
    std::vector<double> acov_; // first column of the Toeplitz matrix
    mutable std::vector<double> work_;
};

/// Solves the n x n system a x = b by LU with partial pivoting.
/// Returns false when a pivot vanishes or the condition estimate is below kSingularRcond.
bool solve_lu(std::vector<double> a, int n, std::span<const double> b, std::span<double> x);

/// Solves the symmetric Toeplitz system [acov[|i-j|]] x = rhs of order p,
/// Cholesky first and LU as fallback. Returns false when numerically singular.
bool solve_symmetric_toeplitz(std::span<const double> acov, int p, std::span<const double> rhs, std::span<double> x);

} // namespace tvs::linalg
