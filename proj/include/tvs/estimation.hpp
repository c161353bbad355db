#pragma once

#include "tvs/series.hpp"

#include <span>
#include <vector>

namespace tvs {

/// Linear prediction coefficients v_1..v_p for horizon h, estimated at anchor
/// time t from a window of N observations. window == 0 encodes the full past
/// (N = t), which is what the stationary forecaster uses.
struct CoeffVector {
    long anchor = 0;
    long window = 0;
    int horizon = 1;
    std::vector<double> values;

    int order() const noexcept { return static_cast<int>(values.size()); }
};

/// Localised autocovariance at lag k over X_{t-N+1..t}:
/// (1/(N-|k|)) * sum_{l=t-N+|k|+1}^{t} X_{l-|k|} X_l.
double local_acov(const Series& x, long t, long N, long k);

/// Localised autocovariances for lags 0..max_lag (shared window).
std::vector<double> local_acovs(const Series& x, long t, long N, int max_lag);

/// One-step Yule-Walker coefficients of order p on the window ending at t.
/// Throws singular-window when the covariance matrix is numerically singular.
CoeffVector yule_walker(const Series& x, long t, long N, int p);

/// Same as yule_walker with the whole past X_1..X_t as window (N = t).
CoeffVector yule_walker_full(const Series& x, long t, int p);

/// Plug-in h-step coefficients from one-step coefficients.
CoeffVector hstep_coeffs(const CoeffVector& one_step, int h);

/// Advances v^{(eta-1)} to v^{(eta)} in place: v_i <- a_i v_1 + v_{i+1}.
inline void hstep_advance(std::span<const double> a, std::span<double> v) noexcept
{
    const std::size_t p = a.size();
    if (p == 0)
        return;
    const double lead = v[0];
    for (std::size_t i = 0; i + 1 < p; ++i)
        v[i] = a[i] * lead + v[i + 1];
    v[p - 1] = a[p - 1] * lead;
}

} // namespace tvs
