#pragma once

#include "tvs/kernels.hpp"
#include "tvs/selection.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace tvs::test {

/// Rescores every (h, p, N) candidate on M1 with the literal forecasters and
/// checks that each reported winner attains the minimum of its class.
inline bool argmin_certificate(const Series& observed, const SelectionReport& report, double tol = 1e-10)
{
    GridRequest req;
    req.targets = report.segments.m1;
    req.h_min = 1;
    req.h_max = report.config.max_horizon;
    req.p_min = report.config.p_min;
    req.p_max = report.config.p_max;
    req.windows = report.config.windows;
    const GridResult ref = grid_sse_reference(observed, req);
    for (const auto& row : report.horizons) {
        for (int p = ref.p_min(); p <= ref.p_max(); ++p)
            for (std::size_t col = 0; col < ref.columns().size(); ++col) {
                const double v = ref.mspe(row.h, p, col);
                if (!std::isfinite(v))
                    continue;
                const bool stationary = ref.columns()[col] == 0;
                const double best = stationary ? row.mspe_s[0] : row.mspe_ls[0];
                if (best > v * (1.0 + tol))
                    return false;
                const Candidate& win = stationary ? row.stationary : row.local;
                if (ref.candidate(p, col) == win && std::abs(v - best) > tol * std::abs(v))
                    return false;
            }
    }
    return true;
}

inline bool same_selection(const SelectionReport& a, const SelectionReport& b, double ratio_tol)
{
    if (a.horizons.size() != b.horizons.size())
        return false;
    for (std::size_t i = 0; i < a.horizons.size(); ++i) {
        const auto& x = a.horizons[i];
        const auto& y = b.horizons[i];
        if (!(x.stationary == y.stationary) || !(x.local == y.local) || x.chosen != y.chosen)
            return false;
        for (auto [r, s] : {std::pair{x.ratio2, y.ratio2}, std::pair{x.ratio3, y.ratio3}}) {
            if (std::isnan(r) && std::isnan(s))
                continue;
            if (std::isinf(r) || std::isinf(s)) {
                if (r != s)
                    return false;
                continue;
            }
            if (std::abs(r - s) > ratio_tol * std::max(1.0, std::abs(r)))
                return false;
        }
    }
    return true;
}

/// The set of horizons choosing the localised class shrinks as delta grows.
inline bool delta_monotone(const Series& observed, SelectionConfig config, std::span<const double> test,
                           const std::vector<double>& deltas)
{
    std::vector<bool> previous;
    for (double d : deltas) {
        config.delta = d;
        const SelectionReport r = run_procedure(observed, config, test);
        std::vector<bool> ls;
        for (const auto& row : r.horizons)
            ls.push_back(row.chosen == ForecastClass::LocallyStationary);
        for (std::size_t i = 0; i < previous.size(); ++i)
            if (ls[i] && !previous[i])
                return false;
        previous = ls;
    }
    return true;
}

/// Replacing the held-out values must leave every M1 and M2 quantity bitwise unchanged.
inline bool no_look_ahead(const Series& observed, const SelectionConfig& config, std::span<const double> test)
{
    std::vector<double> corrupted(test.begin(), test.end());
    for (std::size_t i = 0; i < corrupted.size(); ++i)
        corrupted[i] = corrupted[i] * -7.0 + 1e3 * static_cast<double>(i % 3);
    const SelectionReport a = run_procedure(observed, config, test);
    const SelectionReport b = run_procedure(observed, config, corrupted);
    for (std::size_t i = 0; i < a.horizons.size(); ++i) {
        const auto& x = a.horizons[i];
        const auto& y = b.horizons[i];
        if (!(x.stationary == y.stationary) || !(x.local == y.local) || x.chosen != y.chosen)
            return false;
        for (int j = 0; j < 2; ++j)
            if (x.mspe_s[j] != y.mspe_s[j] || x.mspe_ls[j] != y.mspe_ls[j])
                return false;
        if (x.ratio2 != y.ratio2)
            return false;
    }
    return true;
}

} // namespace tvs::test
