#include "tvs/estimation.hpp"

#include "tvs/error.hpp"
#include "tvs/linalg.hpp"

#include <cstdlib>
#include <string>

namespace tvs {
namespace {

void check_window(const Series& x, long t, long N)
{
    if (N < 1)
        throw Error(ErrorKind::WindowOutOfRange, "window length must be positive, got " + std::to_string(N));
    if (t > x.last() || t - N + 1 < x.first())
        throw Error(ErrorKind::WindowOutOfRange, "window [" + std::to_string(t - N + 1) + ", " + std::to_string(t) +
                                                     "] not inside observed range [" + std::to_string(x.first()) + ", " +
                                                     std::to_string(x.last()) + "]");
}

} // namespace

double local_acov(const Series& x, long t, long N, long k)
{
    check_window(x, t, N);
    const long lag = std::labs(k);
    if (lag > N - 1)
        throw Error(ErrorKind::LagTooLarge, "lag " + std::to_string(k) + " needs N - |k| >= 1 (N = " + std::to_string(N) + ")");
    double sum = 0.0;
    for (long l = t - N + lag + 1; l <= t; ++l)
        sum += x[l - lag] * x[l];
    return sum / static_cast<double>(N - lag);
}

std::vector<double> local_acovs(const Series& x, long t, long N, int max_lag)
{
    std::vector<double> g(static_cast<std::size_t>(max_lag) + 1);
    for (int k = 0; k <= max_lag; ++k)
        g[static_cast<std::size_t>(k)] = local_acov(x, t, N, k);
    return g;
}

CoeffVector yule_walker(const Series& x, long t, long N, int p)
{
    if (p < 0)
        throw Error(ErrorKind::InvalidArgument, "order must be non-negative");
    check_window(x, t, N);
    if (N < p + 1)
        throw Error(ErrorKind::WindowOutOfRange, "window length " + std::to_string(N) + " below order + 1");
    CoeffVector out{t, N, 1, std::vector<double>(static_cast<std::size_t>(p))};
    if (p == 0)
        return out;
    const auto g = local_acovs(x, t, N, p);
    const std::span<const double> rhs(g.data() + 1, static_cast<std::size_t>(p));
    if (!linalg::solve_symmetric_toeplitz(g, p, rhs, out.values))
        throw Error(ErrorKind::SingularWindow, "singular covariance matrix at t = " + std::to_string(t) +
                                                   ", N = " + std::to_string(N) + ", p = " + std::to_string(p));
    return out;
}

CoeffVector yule_walker_full(const Series& x, long t, int p)
{
    auto out = yule_walker(x, t, t - x.first() + 1, p);
    out.window = 0;
    return out;
}

CoeffVector hstep_coeffs(const CoeffVector& one_step, int h)
{
    if (h < 1)
        throw Error(ErrorKind::InvalidArgument, "horizon must be at least 1");
    CoeffVector out = one_step;
    for (int eta = 2; eta <= h; ++eta)
        hstep_advance(one_step.values, out.values);
    out.horizon = h;
    return out;
}

} // namespace tvs
