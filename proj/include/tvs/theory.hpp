#pragma once

#include "tvs/quadrature.hpp"
#include "tvs/tvar.hpp"

#include <optional>
#include <vector>

namespace tvs::theory {

/// Spectral radius of the companion matrix of the AR polynomial with coefficients a.
double spectral_radius(const std::vector<double>& a);

/// gamma_0(u)..gamma_max_lag(u) of the tangent stationary AR(p) at u.
/// Throws unstable-tangent when the spectral radius is not below 1 - 1e-10.
std::vector<double> local_covs(const TvarSpec& spec, double u, int max_lag);
double local_cov(const TvarSpec& spec, double u, int k);

/// Averages of gamma_k over [u - delta, u] for k = 0..max_lag; delta = 0 gives local_covs.
std::vector<double> averaged_covs(const TvarSpec& spec, double u, double delta, int max_lag,
                                  const Quadrature& quad = {});
double averaged_cov(const TvarSpec& spec, double u, double delta, int k, const Quadrature& quad = {});

/// One-step coefficients solving Gamma_delta a = gamma_delta of order p.
/// Throws singular-averaged-matrix.
std::vector<double> a_delta(const TvarSpec& spec, double u, double delta, int p, const Quadrature& quad = {});

/// h-step coefficients obtained from a_delta by the plug-in recursion.
std::vector<double> v_delta(const TvarSpec& spec, double u, double delta, int p, int h,
                            const Quadrature& quad = {});

/// Population h-step MSPE at time w of the order-p predictor whose coefficients
/// come from covariances averaged over a window of relative length delta1.
double g_mspe(const TvarSpec& spec, double w, double delta1, int p, int h, const Quadrature& quad = {});

/// Average of g_mspe over [u, u + delta2]; delta2 = 0 evaluates at u.
double population_mspe(const TvarSpec& spec, double u, double delta1, double delta2, int p, int h,
                       const Quadrature& quad = {});

struct FDeltaTerms {
    int T = 0;
    long m = 0;
    int h = 1;
    std::vector<double> stationary;         ///< by order p = 0..p_max
    std::vector<std::vector<double>> local; ///< [p][window index]
    std::vector<long> windows;
};

/// The population MSPEs entering f(delta); independent of delta.
FDeltaTerms f_delta_terms(const TvarSpec& spec, long T, long m, int p_max, const std::vector<long>& windows,
                          int h, const Quadrature& quad = {});

/// min over p1, p2, N of |stationary[p1] - (1 + delta) * local[p2][N]|.
double f_delta(const FDeltaTerms& terms, double delta);

double f_delta(const TvarSpec& spec, long T, long m, int p_max, const std::vector<long>& windows, int h,
               double delta, const Quadrature& quad = {});

struct DBounds {
    double sup = 0.0;
    double inf = 0.0;
    double u_sup = 0.0;
    double u_inf = 0.0;
};

/// Sup and inf over u in [(T-m-h+1)/T, (T-h+1)/T] of the gap between the lag-1
/// autocorrelation averaged over the training span and the local one at u.
DBounds d_bounds(const TvarSpec& spec, long T, long m, int h, const Quadrature& quad = {});

/// The discrepancy whose sup and inf d_bounds reports.
double d_gap(const TvarSpec& spec, long T, long m, int h, double u, const Quadrature& quad = {});

struct CorollaryThresholds {
    double rho = 0.0;
    DBounds d;
    double delta_lower = 0.0; ///< 2 D_sup^2 / (1 - rho^2)
    double delta_upper = 0.0; ///< D_inf^2 / 8
    /// D_inf^2 >= 2 (ratio * max N / T)^2; empty when no ratio is supplied.
    std::optional<bool> n_condition;
};

/// Throws corollary-inapplicable when rho >= 1.
CorollaryThresholds corollary_thresholds(const TvarSpec& spec, long T, long m, int h,
                                         std::optional<double> derivative_ratio = std::nullopt,
                                         long max_window = 0, const Quadrature& quad = {});

} // namespace tvs::theory
