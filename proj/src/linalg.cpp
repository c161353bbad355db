#include "tvs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>

namespace tvs::linalg {
namespace {

double norm1(std::span<const double> v)
{
    double s = 0.0;
    for (double x : v)
        s += std::abs(x);
    return s;
}

/// Hager's estimate of ||A^{-1}||_1 for symmetric A given a solver for A.
double inverse_norm1_estimate(int n, const std::function<void(std::span<const double>, std::span<double>)>& solve)
{
    std::vector<double> x(static_cast<std::size_t>(n), 1.0 / n);
    std::vector<double> y(x.size()), xi(x.size()), z(x.size());
    double estimate = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        solve(x, y);
        estimate = norm1(y);
        for (std::size_t i = 0; i < y.size(); ++i)
            xi[i] = y[i] >= 0.0 ? 1.0 : -1.0;
        solve(xi, z);
        std::size_t j = 0;
        double zmax = 0.0, ztx = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            ztx += z[i] * x[i];
            if (std::abs(z[i]) > zmax) {
                zmax = std::abs(z[i]);
                j = i;
            }
        }
        if (zmax <= ztx)
            break;
        std::fill(x.begin(), x.end(), 0.0);
        x[j] = 1.0;
    }
    return estimate;
}

double toeplitz_norm1(std::span<const double> acov, int p)
{
    double best = 0.0;
    for (int j = 0; j < p; ++j) {
        double s = 0.0;
        for (int i = 0; i < p; ++i)
            s += std::abs(acov[static_cast<std::size_t>(std::abs(i - j))]);
        best = std::max(best, s);
    }
    return best;
}

} // namespace

std::vector<double> toeplitz(std::span<const double> acov, int n)
{
    std::vector<double> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m[static_cast<std::size_t>(i * n + j)] = acov[static_cast<std::size_t>(std::abs(i - j))];
    return m;
}

void NestedCholesky::factor(std::span<const double> acov, int max_order)
{
    n_ = max_order;
    acov_.assign(acov.begin(), acov.begin() + max_order);
    l_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0.0);
    positive_order_ = 0;
    for (int i = 0; i < n_; ++i) {
        double* li = &l_[static_cast<std::size_t>(i * n_)];
        for (int j = 0; j < i; ++j) {
            const double* lj = &l_[static_cast<std::size_t>(j * n_)];
            double s = acov_[static_cast<std::size_t>(i - j)];
            for (int k = 0; k < j; ++k)
                s -= li[k] * lj[k];
            li[j] = s / lj[j];
        }
        double d = acov_[0];
        for (int k = 0; k < i; ++k)
            d -= li[k] * li[k];
        if (!(d > 0.0) || !std::isfinite(d))
            return;
        li[i] = std::sqrt(d);
        positive_order_ = i + 1;
    }
}

void NestedCholesky::solve(int p, std::span<const double> rhs, std::span<double> out) const
{
    // forward L y = b, then back L' x = y
    for (int i = 0; i < p; ++i) {
        const double* li = &l_[static_cast<std::size_t>(i * n_)];
        double s = rhs[static_cast<std::size_t>(i)];
        for (int k = 0; k < i; ++k)
            s -= li[k] * out[static_cast<std::size_t>(k)];
        out[static_cast<std::size_t>(i)] = s / li[i];
    }
    for (int i = p - 1; i >= 0; --i) {
        double s = out[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < p; ++k)
            s -= l_[static_cast<std::size_t>(k * n_ + i)] * out[static_cast<std::size_t>(k)];
        out[static_cast<std::size_t>(i)] = s / l_[static_cast<std::size_t>(i * n_ + i)];
    }
}

double NestedCholesky::rcond(int p) const
{
    if (p <= 0)
        return 1.0;
    const double anorm = toeplitz_norm1(acov_, p);
    if (anorm == 0.0)
        return 0.0;
    const double inv = inverse_norm1_estimate(p, [this, p](std::span<const double> b, std::span<double> x) { solve(p, b, x); });
    return 1.0 / (anorm * inv);
}

bool solve_lu(std::vector<double> a, int n, std::span<const double> b, std::span<double> x)
{
    const auto at = [&a, n](int i, int j) -> double& { return a[static_cast<std::size_t>(i * n + j)]; };
    double anorm = 0.0;
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            s += std::abs(at(i, j));
        anorm = std::max(anorm, s);
    }
    if (anorm == 0.0 || !std::isfinite(anorm))
        return false;

    std::vector<int> piv(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        int best = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(at(i, k)) > std::abs(at(best, k)))
                best = i;
        piv[static_cast<std::size_t>(k)] = best;
        if (at(best, k) == 0.0)
            return false;
        if (best != k)
            for (int j = 0; j < n; ++j)
                std::swap(at(k, j), at(best, j));
        for (int i = k + 1; i < n; ++i) {
            at(i, k) /= at(k, k);
            for (int j = k + 1; j < n; ++j)
                at(i, j) -= at(i, k) * at(k, j);
        }
    }

    const auto lu_solve = [&](std::span<const double> rhs, std::span<double> out, bool transpose) {
        std::copy(rhs.begin(), rhs.begin() + n, out.begin());
        if (!transpose) {
            for (int k = 0; k < n; ++k)
                std::swap(out[static_cast<std::size_t>(k)], out[static_cast<std::size_t>(piv[static_cast<std::size_t>(k)])]);
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < i; ++k)
                    out[static_cast<std::size_t>(i)] -= at(i, k) * out[static_cast<std::size_t>(k)];
            for (int i = n - 1; i >= 0; --i) {
                for (int k = i + 1; k < n; ++k)
                    out[static_cast<std::size_t>(i)] -= at(i, k) * out[static_cast<std::size_t>(k)];
                out[static_cast<std::size_t>(i)] /= at(i, i);
            }
        } else {
            // U' L' P x = b
            for (int i = 0; i < n; ++i) {
                for (int k = 0; k < i; ++k)
                    out[static_cast<std::size_t>(i)] -= at(k, i) * out[static_cast<std::size_t>(k)];
                out[static_cast<std::size_t>(i)] /= at(i, i);
            }
            for (int i = n - 1; i >= 0; --i)
                for (int k = i + 1; k < n; ++k)
                    out[static_cast<std::size_t>(i)] -= at(k, i) * out[static_cast<std::size_t>(k)];
            for (int k = n - 1; k >= 0; --k)
                std::swap(out[static_cast<std::size_t>(k)], out[static_cast<std::size_t>(piv[static_cast<std::size_t>(k)])]);
        }
    };

    // Hager estimate with transpose solves, so general (non-symmetric) input is handled.
    std::vector<double> v(static_cast<std::size_t>(n), 1.0 / n), y(v.size()), xi(v.size()), z(v.size());
    double inv = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        lu_solve(v, y, false);
        inv = norm1(y);
        for (std::size_t i = 0; i < y.size(); ++i)
            xi[i] = y[i] >= 0.0 ? 1.0 : -1.0;
        lu_solve(xi, z, true);
        std::size_t j = 0;
        double zmax = 0.0, ztv = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            ztv += z[i] * v[i];
            if (std::abs(z[i]) > zmax) {
                zmax = std::abs(z[i]);
                j = i;
            }
        }
        if (zmax <= ztv)
            break;
        std::fill(v.begin(), v.end(), 0.0);
        v[j] = 1.0;
    }
    if (!std::isfinite(inv) || 1.0 / (anorm * inv) < kSingularRcond)
        return false;

    lu_solve(b, x, false);
    for (int i = 0; i < n; ++i)
        if (!std::isfinite(x[static_cast<std::size_t>(i)]))
            return false;
    return true;
}

bool solve_symmetric_toeplitz(std::span<const double> acov, int p, std::span<const double> rhs, std::span<double> x)
{
    if (p == 0)
        return true;
    NestedCholesky chol;
    chol.factor(acov, p);
    if (chol.positive_order() == p) {
        if (chol.rcond(p) < kSingularRcond)
            return false;
        chol.solve(p, rhs, x);
        return true;
    }
    return solve_lu(toeplitz(acov, p), p, rhs, x);
}

} // namespace tvs::linalg
