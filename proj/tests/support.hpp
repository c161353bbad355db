#pragma once

#include "tvs/series.hpp"
#include "tvs/tvar.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace tvs::test {

inline bool rel_close(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline Series alternating(std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = i % 2 == 0 ? 1.0 : -1.0;
    return Series(v);
}

inline Series ar1_path(double a, std::size_t n, std::uint64_t seed)
{
    return simulate_tvar(constant_ar({a}), n, seed);
}

/// Least-squares slope of x_t on x_{t-1}.
inline double lag1_slope(const Series& x)
{
    double num = 0.0, den = 0.0;
    for (long t = x.first() + 1; t <= x.last(); ++t) {
        num += x[t] * x[t - 1];
        den += x[t - 1] * x[t - 1];
    }
    return num / den;
}

/// Plain sample autocovariance with divisor n, no demeaning.
inline double sample_acov(std::span<const double> v, std::size_t k)
{
    double s = 0.0;
    for (std::size_t i = k; i < v.size(); ++i)
        s += v[i] * v[i - k];
    return s / static_cast<double>(v.size());
}

/// First row of (e1 a' + H)^h, H the shift with ones on the subdiagonal.
inline std::vector<double> matrix_power_row(const std::vector<double>& a, int h)
{
    const auto p = static_cast<Eigen::Index>(a.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index j = 0; j < p; ++j)
        A(0, j) = a[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 1; i < p; ++i)
        A(i, i - 1) = 1.0;
    Eigen::MatrixXd P = Eigen::MatrixXd::Identity(p, p);
    for (int k = 0; k < h; ++k)
        P = P * A;
    std::vector<double> out(a.size());
    for (Eigen::Index j = 0; j < p; ++j)
        out[static_cast<std::size_t>(j)] = P(0, j);
    return out;
}

} // namespace tvs::test
