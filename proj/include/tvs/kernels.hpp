#pragma once

#include "tvs/forecasting.hpp"
#include "tvs/series.hpp"

#include <cstdint>
#include <vector>

namespace tvs {

/// Prefix sums of lagged products, so every localised autocovariance of lag
/// k <= max_lag is an O(1) difference. Accumulated in long double.
class AcovTable {
public:
    AcovTable(const Series& x, int max_lag);

    int max_lag() const noexcept { return max_lag_; }
    const Series& series() const noexcept { return x_; }

    /// Same quantity as local_acov(x, t, N, k); preconditions are not checked.
    double acov(long t, long N, int k) const noexcept;

    void acovs(long t, long N, int max_lag, double* out) const noexcept;

private:
    Series x_;
    int max_lag_;
    std::size_t stride_;
    std::vector<long double> prefix_; // [k][i], i = 0..n
};

enum class Infeasibility : std::uint8_t { None = 0, WindowOutOfRange = 1, Singular = 2 };

/// Which candidates to score on which targets.
struct GridRequest {
    SegmentRange targets;
    int h_min = 1;
    int h_max = 1;
    int p_min = 0;
    int p_max = 1;
    std::vector<long> windows;      ///< localised window lengths, increasing
    bool include_stationary = true; ///< appends a full-past column (window 0)
};

/// Sum of squared errors for every (h, p, window) candidate over the targets.
class GridResult {
public:
    explicit GridResult(const GridRequest& request);

    int h_min() const noexcept { return h_min_; }
    int h_max() const noexcept { return h_max_; }
    int p_min() const noexcept { return p_min_; }
    int p_max() const noexcept { return p_max_; }
    long points() const noexcept { return points_; }
    /// Window per column; 0 marks the stationary column.
    const std::vector<long>& columns() const noexcept { return columns_; }

    double& sse(int h, int p, std::size_t col) { return sse_[index(h, p, col)]; }
    double sse(int h, int p, std::size_t col) const { return sse_[index(h, p, col)]; }
    Infeasibility& status(int h, int p, std::size_t col) { return status_[index(h, p, col)]; }
    Infeasibility status(int h, int p, std::size_t col) const { return status_[index(h, p, col)]; }

    /// Mean squared error, +inf for infeasible candidates.
    double mspe(int h, int p, std::size_t col) const;

    Candidate candidate(int p, std::size_t col) const;

private:
    std::size_t index(int h, int p, std::size_t col) const noexcept
    {
        return (static_cast<std::size_t>(h - h_min_) * static_cast<std::size_t>(p_max_ - p_min_ + 1) +
                static_cast<std::size_t>(p - p_min_)) *
                   columns_.size() +
               col;
    }

    int h_min_, h_max_, p_min_, p_max_;
    long points_;
    std::vector<long> columns_;
    std::vector<double> sse_;
    std::vector<Infeasibility> status_;
};

/// Literal evaluation through forecast_ls / forecast_s, one forecast at a time.
/// Serial and slow; kept as the reference the fast kernel is tested against.
GridResult grid_sse_reference(const Series& x, const GridRequest& request);

/// Same result from an AcovTable: one factorisation per (anchor, window) serves
/// every order and horizon. Columns are distributed over OpenMP threads; each
/// column is accumulated in anchor order, so output does not depend on thread count.
GridResult grid_sse(const AcovTable& table, const GridRequest& request);

/// Per-target errors X_{t+h} - forecast for one candidate, using the table.
/// Throws singular-window / window-out-of-range like the reference forecasters.
std::vector<double> candidate_errors(const AcovTable& table, const Candidate& c, int h, SegmentRange targets);

} // namespace tvs
