#include "tvs/theory.hpp"

#include "tvs/error.hpp"
#include "tvs/estimation.hpp"
#include "tvs/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

namespace tvs::theory {
namespace {

constexpr double kStabilityMargin = 1e-10;

std::string at_text(double u)
{
    return std::to_string(u);
}

/// Averaged covariances of lags 0..max_lag over [u - delta, u], all lags in one pass.
std::vector<double> averaged_block(const TvarSpec& spec, double u, double delta, int max_lag, const Quadrature& quad)
{
    if (delta < 0.0)
        throw Error(ErrorKind::InvalidArgument, "averaging span must be non-negative");
    if (delta == 0.0 || spec.time_invariant)
        return local_covs(spec, u, max_lag);
    std::vector<double> acc(static_cast<std::size_t>(max_lag) + 1, 0.0);
    quad.for_each_node(u - delta, u, [&](double s, double w) {
        const auto g = local_covs(spec, s, max_lag);
        for (std::size_t k = 0; k < acc.size(); ++k)
            acc[k] += w * g[k];
    });
    for (double& v : acc)
        v /= delta;
    return acc;
}

std::vector<double> solve_order(const std::vector<double>& acov, int p, double u)
{
    std::vector<double> a(static_cast<std::size_t>(p));
    if (p == 0)
        return a;
    const std::span<const double> rhs(acov.data() + 1, static_cast<std::size_t>(p));
    if (!linalg::solve_symmetric_toeplitz(acov, p, rhs, a))
        throw Error(ErrorKind::SingularAveragedMatrix,
                    "averaged covariance matrix of order " + std::to_string(p) + " is singular at u = " + at_text(u));
    return a;
}

std::vector<double> advance(const std::vector<double>& a, int h)
{
    std::vector<double> v = a;
    for (int eta = 2; eta <= h; ++eta)
        hstep_advance(a, v);
    return v;
}

double g_from(const std::vector<double>& local, const std::vector<double>& v, int h)
{
    const std::size_t p = v.size();
    double g = local[0];
    for (std::size_t i = 0; i < p; ++i)
        g -= 2.0 * v[i] * local[static_cast<std::size_t>(h) + i];
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
            g += v[i] * v[j] * local[i > j ? i - j : j - i];
    return g;
}

/// g for every order 0..p_max at time w, sharing one averaged block.
std::vector<double> g_orders(const TvarSpec& spec, double w, double delta1, int p_max, int h, const Quadrature& quad)
{
    const auto local = local_covs(spec, w, p_max + h);
    const auto avg = p_max > 0 ? averaged_block(spec, w, delta1, p_max, quad) : std::vector<double>{};
    std::vector<double> g(static_cast<std::size_t>(p_max) + 1);
    for (int p = 0; p <= p_max; ++p)
        g[static_cast<std::size_t>(p)] = p == 0 ? local[0] : g_from(local, advance(solve_order(avg, p, w), h), h);
    return g;
}

std::vector<double> population_orders(const TvarSpec& spec, double u, double delta1, double delta2, int p_max, int h,
                                      const Quadrature& quad)
{
    if (delta2 < 0.0)
        throw Error(ErrorKind::InvalidArgument, "evaluation span must be non-negative");
    if (delta2 == 0.0 || spec.time_invariant)
        return g_orders(spec, u, delta1, p_max, h, quad);
    std::vector<double> acc(static_cast<std::size_t>(p_max) + 1, 0.0);
    quad.for_each_node(u, u + delta2, [&](double w, double wt) {
        const auto g = g_orders(spec, w, delta1, p_max, h, quad);
        for (std::size_t k = 0; k < acc.size(); ++k)
            acc[k] += wt * g[k];
    }, {delta1, 1.0 + delta1});
    for (double& v : acc)
        v /= delta2;
    return acc;
}

/// Extremum of f on [lo, hi]: uniform grid of `points` nodes, then golden-section
/// search on the two cells around the best node.
std::pair<double, double> extremum(const std::function<double(double)>& f, double lo, double hi, bool maximize,
                                   int points = 2001)
{
    const double sign = maximize ? -1.0 : 1.0;
    if (hi <= lo)
        return {lo, f(lo)};
    std::vector<double> vals(static_cast<std::size_t>(points));
    const double step = (hi - lo) / (points - 1);
    std::size_t best = 0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        vals[i] = sign * f(i + 1 == vals.size() ? hi : lo + static_cast<double>(i) * step);
        if (vals[i] < vals[best])
            best = i;
    }
    double a = lo + static_cast<double>(best == 0 ? 0 : best - 1) * step;
    double b = std::min(hi, lo + static_cast<double>(best + 1) * step);
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - ratio * (b - a), d = a + ratio * (b - a);
    double fc = sign * f(c), fd = sign * f(d);
    while (b - a > 1e-12) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = sign * f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = sign * f(d);
        }
    }
    double u_best = lo + static_cast<double>(best) * step;
    double v_best = vals[best];
    const double mid = 0.5 * (a + b);
    const double v_mid = sign * f(mid);
    if (v_mid < v_best) {
        u_best = mid;
        v_best = v_mid;
    }
    return {u_best, sign * v_best};
}

} // namespace

double spectral_radius(const std::vector<double>& a)
{
    const std::size_t p = a.size();
    if (p == 0)
        return 0.0;
    if (p == 1)
        return std::abs(a[0]);
    if (p == 2) {
        const double disc = a[0] * a[0] + 4.0 * a[1];
        if (disc < 0.0)
            return std::sqrt(-a[1]);
        const double r = std::sqrt(disc);
        return std::max(std::abs(a[0] + r), std::abs(a[0] - r)) / 2.0;
    }
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
    for (std::size_t j = 0; j < p; ++j)
        companion(0, static_cast<Eigen::Index>(j)) = a[j];
    for (std::size_t i = 1; i < p; ++i)
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    return companion.eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<double> local_covs(const TvarSpec& spec, double u, int max_lag)
{
    if (max_lag < 0)
        throw Error(ErrorKind::InvalidArgument, "lag must be non-negative");
    const auto a = spec.coefficients_at(u);
    const double s = spec.sigma_at(u);
    const double var = s * s;
    const std::size_t p = a.size();
    std::vector<double> g(static_cast<std::size_t>(max_lag) + 1, 0.0);
    if (spectral_radius(a) >= 1.0 - kStabilityMargin)
        throw Error(ErrorKind::UnstableTangent, "tangent process of '" + spec.label + "' is not stable at u = " + at_text(u));
    if (p == 0) {
        g[0] = var;
        return g;
    }
    if (p == 1) {
        g[0] = var / (1.0 - a[0] * a[0]);
        for (std::size_t k = 1; k < g.size(); ++k)
            g[k] = g[k - 1] * a[0];
        return g;
    }
    // gamma_k - sum_j a_j gamma_{|k-j|} = var * [k == 0], k = 0..p
    const auto n = static_cast<Eigen::Index>(p + 1);
    Eigen::MatrixXd mat = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
        for (std::size_t j = 1; j <= p; ++j)
            mat(k, std::abs(k - static_cast<Eigen::Index>(j))) -= a[j - 1];
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(0) = var;
    const Eigen::VectorXd sol = mat.partialPivLu().solve(rhs);
    std::vector<double> full(std::max<std::size_t>(g.size(), p + 1));
    for (Eigen::Index k = 0; k < n; ++k)
        full[static_cast<std::size_t>(k)] = sol(k);
    for (std::size_t k = p + 1; k < full.size(); ++k) {
        double v = 0.0;
        for (std::size_t j = 1; j <= p; ++j)
            v += a[j - 1] * full[k - j];
        full[k] = v;
    }
    std::copy_n(full.begin(), g.size(), g.begin());
    return g;
}

double local_cov(const TvarSpec& spec, double u, int k)
{
    return local_covs(spec, u, std::abs(k)).back();
}

std::vector<double> averaged_covs(const TvarSpec& spec, double u, double delta, int max_lag, const Quadrature& quad)
{
    return averaged_block(spec, u, delta, max_lag, quad);
}

double averaged_cov(const TvarSpec& spec, double u, double delta, int k, const Quadrature& quad)
{
    return averaged_block(spec, u, delta, std::abs(k), quad).back();
}

std::vector<double> a_delta(const TvarSpec& spec, double u, double delta, int p, const Quadrature& quad)
{
    if (p < 0)
        throw Error(ErrorKind::InvalidArgument, "order must be non-negative");
    if (p == 0)
        return {};
    return solve_order(averaged_block(spec, u, delta, p, quad), p, u);
}

std::vector<double> v_delta(const TvarSpec& spec, double u, double delta, int p, int h, const Quadrature& quad)
{
    if (h < 1)
        throw Error(ErrorKind::InvalidArgument, "horizon must be at least 1");
    return advance(a_delta(spec, u, delta, p, quad), h);
}

double g_mspe(const TvarSpec& spec, double w, double delta1, int p, int h, const Quadrature& quad)
{
    if (h < 1 || p < 0)
        throw Error(ErrorKind::InvalidArgument, "need p >= 0 and h >= 1");
    const auto local = local_covs(spec, w, p + h);
    if (p == 0)
        return local[0];
    return g_from(local, v_delta(spec, w, delta1, p, h, quad), h);
}

double population_mspe(const TvarSpec& spec, double u, double delta1, double delta2, int p, int h,
                       const Quadrature& quad)
{
    if (h < 1 || p < 0)
        throw Error(ErrorKind::InvalidArgument, "need p >= 0 and h >= 1");
    if (delta1 < 0.0 || delta2 < 0.0)
        throw Error(ErrorKind::InvalidArgument, "spans must be non-negative");
    if (delta2 == 0.0 || spec.time_invariant)
        return g_mspe(spec, u, delta1, p, h, quad);
    double acc = 0.0;
    quad.for_each_node(
        u, u + delta2, [&](double w, double wt) { acc += wt * g_mspe(spec, w, delta1, p, h, quad); },
        {delta1, 1.0 + delta1});
    return acc / delta2;
}

FDeltaTerms f_delta_terms(const TvarSpec& spec, long T, long m, int p_max, const std::vector<long>& windows, int h,
                          const Quadrature& quad)
{
    const long s1 = T - m - h + 1;
    if (m < 1 || h < 1 || p_max < 0 || s1 < 1)
        throw Error(ErrorKind::InvalidArgument, "need m >= 1, h >= 1, p_max >= 0 and T - m - h + 1 >= 1");
    if (windows.empty())
        throw Error(ErrorKind::InvalidArgument, "window grid is empty");
    const double Td = static_cast<double>(T);
    const double u = static_cast<double>(s1) / Td;
    const double d2 = static_cast<double>(m) / Td;
    FDeltaTerms out;
    out.T = static_cast<int>(T);
    out.m = m;
    out.h = h;
    out.windows = windows;
    out.stationary = population_orders(spec, u, u, d2, p_max, h, quad);
    out.local.assign(static_cast<std::size_t>(p_max) + 1, std::vector<double>(windows.size()));
    for (std::size_t i = 0; i < windows.size(); ++i) {
        const auto col = population_orders(spec, u, static_cast<double>(windows[i]) / Td, d2, p_max, h, quad);
        for (int p = 0; p <= p_max; ++p)
            out.local[static_cast<std::size_t>(p)][i] = col[static_cast<std::size_t>(p)];
    }
    return out;
}

double f_delta(const FDeltaTerms& terms, double delta)
{
    double best = std::numeric_limits<double>::infinity();
    for (double s : terms.stationary)
        for (const auto& row : terms.local)
            for (double l : row)
                best = std::min(best, std::abs(s - (1.0 + delta) * l));
    return best;
}

double f_delta(const TvarSpec& spec, long T, long m, int p_max, const std::vector<long>& windows, int h, double delta,
               const Quadrature& quad)
{
    return f_delta(f_delta_terms(spec, T, m, p_max, windows, h, quad), delta);
}

double d_gap(const TvarSpec& spec, long T, long m, int h, double u, const Quadrature& quad)
{
    const double span = static_cast<double>(T - m - h + 1) / static_cast<double>(T);
    const auto avg = averaged_block(spec, u, span, 1, quad);
    const auto loc = local_covs(spec, u, 1);
    return std::abs(avg[1] / avg[0] - loc[1] / loc[0]);
}

DBounds d_bounds(const TvarSpec& spec, long T, long m, int h, const Quadrature& quad)
{
    if (m < 1 || h < 1 || T - m - h + 1 < 1)
        throw Error(ErrorKind::InvalidArgument, "need m >= 1, h >= 1 and T - m - h + 1 >= 1");
    const double lo = static_cast<double>(T - m - h + 1) / static_cast<double>(T);
    const double hi = static_cast<double>(T - h + 1) / static_cast<double>(T);
    const auto f = [&](double u) { return d_gap(spec, T, m, h, u, quad); };
    DBounds out;
    std::tie(out.u_sup, out.sup) = extremum(f, lo, hi, true);
    std::tie(out.u_inf, out.inf) = extremum(f, lo, hi, false);
    return out;
}

CorollaryThresholds corollary_thresholds(const TvarSpec& spec, long T, long m, int h,
                                         std::optional<double> derivative_ratio, long max_window,
                                         const Quadrature& quad)
{
    CorollaryThresholds out;
    out.d = d_bounds(spec, T, m, h, quad);
    const double lo = static_cast<double>(T - m - h + 1) / static_cast<double>(T);
    const double hi = static_cast<double>(T - h + 1) / static_cast<double>(T);
    out.rho = extremum(
                  [&](double u) {
                      const auto g = local_covs(spec, u, 1);
                      return std::abs(g[1] / g[0]);
                  },
                  lo, hi, true)
                  .second;
    if (!(out.rho < 1.0))
        throw Error(ErrorKind::CorollaryInapplicable, "lag-1 autocorrelation reaches 1 on the validation span");
    out.delta_lower = 2.0 * out.d.sup * out.d.sup / (1.0 - out.rho * out.rho);
    out.delta_upper = out.d.inf * out.d.inf / 8.0;
    if (derivative_ratio) {
        if (max_window < 1)
            throw Error(ErrorKind::InvalidArgument, "the window condition needs the largest window");
        const double r = *derivative_ratio * static_cast<double>(max_window) / static_cast<double>(T);
        out.n_condition = out.d.inf * out.d.inf >= 2.0 * r * r;
    }
    return out;
}

} // namespace tvs::theory
