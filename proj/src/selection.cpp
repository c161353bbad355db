#include "tvs/selection.hpp"

#include "tvs/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tvs {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

long floor_pow(double base, double exponent)
{
    return static_cast<long>(std::floor(std::pow(base, exponent) + 1e-9));
}

double mean_square(const std::vector<double>& errors)
{
    double sse = 0.0;
    for (double e : errors)
        sse += e * e;
    return sse / static_cast<double>(errors.size());
}

/// MSPE of a fixed candidate on a segment, +inf (and a record) when it cannot be evaluated.
double score(const AcovTable& table, const Candidate& c, int h, SegmentRange seg, int segment_id,
             HorizonReport& row, std::vector<double>* errors = nullptr)
{
    try {
        auto e = candidate_errors(table, c, h, seg);
        const double v = mean_square(e);
        if (errors)
            *errors = std::move(e);
        return v;
    } catch (const Error& err) {
        if (err.kind() != ErrorKind::SingularWindow && err.kind() != ErrorKind::WindowOutOfRange)
            throw;
        row.infeasible.push_back({c, segment_id,
                                  err.kind() == ErrorKind::SingularWindow ? Infeasibility::Singular
                                                                          : Infeasibility::WindowOutOfRange});
        return kInf;
    }
}

} // namespace

Segments split_segments(long T, long m)
{
    if (m < 1 || T <= 2 * m)
        throw Error(ErrorKind::InvalidSplit,
                    "need T > 2m >= 2, got T = " + std::to_string(T) + ", m = " + std::to_string(m));
    return {{1, T - 2 * m}, {T - 2 * m + 1, T - m}, {T - m + 1, T}, {T + 1, T + m}};
}

long default_segment_length(long n)
{
    return static_cast<long>(std::floor(std::pow(static_cast<double>(n), 0.85) / 4.0 + 1e-9));
}

std::vector<long> default_n_grid(long n)
{
    if (n < 16)
        throw Error(ErrorKind::InvalidArgument, "default window grid needs n >= 16");
    const long lo = floor_pow(static_cast<double>(n) / 2.0, 0.8);
    const long hi = floor_pow(static_cast<double>(n), 0.8);
    const long step = std::max<long>(1, (hi - lo + 24) / 25);
    std::vector<long> grid;
    for (long N = lo; N <= hi; N += step)
        grid.push_back(N);
    return grid;
}

void SelectionConfig::validate(long T) const
{
    if (m < 1)
        throw Error(ErrorKind::InvalidArgument, "segment length m must be at least 1");
    if (p_min < 0 || p_max < p_min)
        throw Error(ErrorKind::InvalidArgument, "need 0 <= p_min <= p_max");
    if (max_horizon < 1)
        throw Error(ErrorKind::InvalidArgument, "max horizon must be at least 1");
    if (!(delta >= 0.0) || !std::isfinite(delta))
        throw Error(ErrorKind::InvalidArgument, "delta must be finite and non-negative");
    if (windows.empty())
        throw Error(ErrorKind::InvalidArgument, "window grid is empty");
    for (std::size_t i = 1; i < windows.size(); ++i)
        if (windows[i] <= windows[i - 1])
            throw Error(ErrorKind::InvalidArgument, "window grid must be strictly increasing");
    if (windows.front() <= p_max)
        throw Error(ErrorKind::InvalidArgument, "smallest window must exceed p_max");
    const long needed = 2 * m + windows.back();
    if (T < needed)
        throw Error(ErrorKind::InsufficientData, "need at least " + std::to_string(needed) +
                                                     " observations (2m + max window), got " + std::to_string(T));
    split_segments(T, m);
}

SelectionConfig SelectionConfig::defaults_for(long n)
{
    SelectionConfig c;
    c.m = default_segment_length(n);
    c.p_max = 7;
    c.max_horizon = 10;
    c.windows = default_n_grid(n);
    return c;
}

double mspe_ratio(double mspe_s, double mspe_ls) noexcept
{
    if ((mspe_s == 0.0 && mspe_ls == 0.0) || (std::isinf(mspe_s) && std::isinf(mspe_ls)))
        return 1.0;
    if (mspe_ls == 0.0)
        return kInf;
    return mspe_s / mspe_ls;
}

bool choose_local(double mspe_s, double mspe_ls, double delta) noexcept
{
    if ((mspe_s == 0.0 && mspe_ls == 0.0) || (std::isinf(mspe_s) && std::isinf(mspe_ls)))
        return false;
    return mspe_ratio(mspe_s, mspe_ls) >= 1.0 + delta;
}

WithinClass select_within_class(const GridResult& grid, int h)
{
    const auto& cols = grid.columns();
    std::optional<ClassWinner> best_s, best_ls;
    for (int p = grid.p_min(); p <= grid.p_max(); ++p) {
        for (std::size_t col = 0; col < cols.size(); ++col) {
            const double v = grid.mspe(h, p, col);
            if (!std::isfinite(v))
                continue;
            auto& best = cols[col] == 0 ? best_s : best_ls;
            if (!best || v < best->mspe1)
                best = ClassWinner{grid.candidate(p, col), v};
        }
    }
    if (!best_s)
        throw Error(ErrorKind::AllCandidatesInfeasible, "no feasible stationary candidate for h = " + std::to_string(h));
    if (!best_ls)
        throw Error(ErrorKind::AllCandidatesInfeasible, "no feasible localised candidate for h = " + std::to_string(h));
    return {*best_s, *best_ls};
}

SelectionReport run_procedure(const Series& observed, const SelectionConfig& config, std::span<const double> test)
{
    if (observed.first() != 1)
        throw Error(ErrorKind::InvalidArgument, "observed series must start at time index 1");
    const long T = static_cast<long>(observed.size());
    config.validate(T);
    if (!test.empty() && static_cast<long>(test.size()) != config.m)
        throw Error(ErrorKind::InvalidArgument, "held-out segment must contain exactly m values");

    SelectionReport report;
    report.T = T;
    report.segments = split_segments(T, config.m);
    report.config = config;
    report.has_test = !test.empty();

    GridRequest request;
    request.targets = report.segments.m1;
    request.h_min = 1;
    request.h_max = config.max_horizon;
    request.p_min = config.p_min;
    request.p_max = config.p_max;
    request.windows = config.windows;
    request.include_stationary = true;

    const AcovTable table(observed, config.p_max);
    const GridResult grid = grid_sse(table, request);
    std::optional<AcovTable> full;
    if (report.has_test)
        full.emplace(extend(observed, test), config.p_max);

    for (int h = 1; h <= config.max_horizon; ++h) {
        HorizonReport row;
        row.h = h;
        for (int p = grid.p_min(); p <= grid.p_max(); ++p)
            for (std::size_t col = 0; col < grid.columns().size(); ++col)
                if (grid.status(h, p, col) != Infeasibility::None)
                    row.infeasible.push_back({grid.candidate(p, col), 1, grid.status(h, p, col)});

        const WithinClass w = select_within_class(grid, h);
        row.stationary = w.stationary.candidate;
        row.local = w.local.candidate;
        row.mspe_s[0] = w.stationary.mspe1;
        row.mspe_ls[0] = w.local.mspe1;
        row.mspe_s[1] = score(table, row.stationary, h, report.segments.m2, 2, row);
        row.mspe_ls[1] = score(table, row.local, h, report.segments.m2, 2, row);
        row.ratio2 = mspe_ratio(row.mspe_s[1], row.mspe_ls[1]);
        row.chosen = choose_local(row.mspe_s[1], row.mspe_ls[1], config.delta) ? ForecastClass::LocallyStationary
                                                                                : ForecastClass::Stationary;
        const Candidate& pick = row.chosen == ForecastClass::Stationary ? row.stationary : row.local;

        if (full) {
            std::vector<double> es, els;
            row.mspe_s[2] = score(*full, row.stationary, h, report.segments.m3, 3, row, &es);
            row.mspe_ls[2] = score(*full, row.local, h, report.segments.m3, 3, row, &els);
            row.ratio3 = mspe_ratio(row.mspe_s[2], row.mspe_ls[2]);
            const auto& chosen_errors = row.chosen == ForecastClass::Stationary ? es : els;
            for (std::size_t i = 0; i < chosen_errors.size(); ++i)
                row.forecasts.push_back(test[i] - chosen_errors[i]);
        } else {
            row.mspe_s[2] = row.mspe_ls[2] = std::numeric_limits<double>::quiet_NaN();
            row.ratio3 = std::numeric_limits<double>::quiet_NaN();
            try {
                row.forecasts.push_back(forecast(observed, pick, T, h));
            } catch (const Error& err) {
                if (err.kind() != ErrorKind::SingularWindow)
                    throw;
                row.forecasts.push_back(std::numeric_limits<double>::quiet_NaN());
            }
        }
        report.horizons.push_back(std::move(row));
    }
    return report;
}

SelectionReport run_modified_procedure(const Series& observed, const SelectionConfig& config,
                                       std::span<const double> test)
{
    SelectionConfig fixed = config;
    fixed.p_min = 1;
    fixed.p_max = 1;
    fixed.max_horizon = 1;
    return run_procedure(observed, fixed, test);
}

} // namespace tvs
