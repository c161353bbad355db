#pragma once

#include "tvs/forecasting.hpp"
#include "tvs/kernels.hpp"
#include "tvs/series.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tvs {

/// M0 = {1..T-2m}, M1 = {T-2m+1..T-m}, M2 = {T-m+1..T}, M3 = {T+1..T+m}.
struct Segments {
    SegmentRange m0, m1, m2, m3;
};

Segments split_segments(long T, long m);

/// m = floor(n^0.85 / 4).
long default_segment_length(long n);

/// Windows {N_min + i*step <= N_max} with N_min = floor((n/2)^0.8), N_max = floor(n^0.8),
/// step = ceil((N_max - N_min) / 25).
std::vector<long> default_n_grid(long n);

struct SelectionConfig {
    long m = 1;
    int p_min = 0;
    int p_max = 7;
    std::vector<long> windows;
    int max_horizon = 10;
    double delta = 0.0;

    /// Throws when the configuration cannot run on T observations.
    void validate(long T) const;

    /// Defaults of the simulation protocol for a series of total length n = T + m.
    static SelectionConfig defaults_for(long n);
};

struct InfeasibleCandidate {
    Candidate candidate;
    int segment = 1; ///< 1, 2 or 3
    Infeasibility reason = Infeasibility::Singular;
};

/// Winner of one forecaster family on M1.
struct ClassWinner {
    Candidate candidate;
    double mspe1 = 0.0;
};

struct WithinClass {
    ClassWinner stationary;
    ClassWinner local;
};

struct HorizonReport {
    int h = 1;
    Candidate stationary;
    Candidate local;
    std::array<double, 3> mspe_s{};  ///< M1, M2, M3 (M3 NaN without held-out truths)
    std::array<double, 3> mspe_ls{};
    double ratio2 = 0.0;
    double ratio3 = 0.0;
    ForecastClass chosen = ForecastClass::Stationary;
    /// Forecasts of the chosen forecaster: rolling over M3 when truths are
    /// available, otherwise X_{T+h} from anchor T.
    std::vector<double> forecasts;
    std::vector<InfeasibleCandidate> infeasible;
};

struct SelectionReport {
    long T = 0;
    Segments segments;
    SelectionConfig config;
    bool has_test = false;
    std::vector<HorizonReport> horizons;
};

/// MSPE^s / MSPE^ls with the conventions 0/0 = 1, x/0 = +inf, inf/inf = 1.
double mspe_ratio(double mspe_s, double mspe_ls) noexcept;

/// True when the localised class is chosen: ratio >= 1 + delta, except that a
/// 0/0 or inf/inf tie always keeps the stationary forecaster.
bool choose_local(double mspe_s, double mspe_ls, double delta) noexcept;

/// Argmin on M1 within each class from a scored grid; ties go to smaller p, then smaller N.
/// Throws all-candidates-infeasible when a class has no finite MSPE.
WithinClass select_within_class(const GridResult& grid, int h);

/// Steps on the observed series X_1..X_T; `test` holds X_{T+1..T+m} when known.
/// The test values are only ever read when scoring M3.
SelectionReport run_procedure(const Series& observed, const SelectionConfig& config,
                              std::span<const double> test = {});

/// Order fixed at 1, horizon 1, window chosen among the grid.
SelectionReport run_modified_procedure(const Series& observed, const SelectionConfig& config,
                                       std::span<const double> test = {});

} // namespace tvs
