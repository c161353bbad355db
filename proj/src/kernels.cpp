#include "tvs/kernels.hpp"

#include "tvs/error.hpp"
#include "tvs/estimation.hpp"
#include "tvs/linalg.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace tvs {

AcovTable::AcovTable(const Series& x, int max_lag)
    : x_(x), max_lag_(max_lag), stride_(x.size() + 1), prefix_(static_cast<std::size_t>(max_lag + 1) * stride_, 0.0L)
{
    const auto v = x.values();
    const std::size_t n = v.size();
    for (int k = 0; k <= max_lag; ++k) {
        long double* row = &prefix_[static_cast<std::size_t>(k) * stride_];
        for (std::size_t i = 1; i <= n; ++i) {
            // i is the position of X_l within the series (1-based)
            long double term = 0.0L;
            if (i > static_cast<std::size_t>(k))
                term = static_cast<long double>(v[i - 1]) * static_cast<long double>(v[i - 1 - static_cast<std::size_t>(k)]);
            row[i] = row[i - 1] + term;
        }
    }
}

double AcovTable::acov(long t, long N, int k) const noexcept
{
    const long base = x_.first() - 1;
    const long double* row = &prefix_[static_cast<std::size_t>(k) * stride_];
    const long hi = t - base;
    const long lo = t - N + k - base;
    return static_cast<double>((row[hi] - row[lo]) / static_cast<long double>(N - k));
}

void AcovTable::acovs(long t, long N, int max_lag, double* out) const noexcept
{
    for (int k = 0; k <= max_lag; ++k)
        out[k] = acov(t, N, k);
}

GridResult::GridResult(const GridRequest& r)
    : h_min_(r.h_min), h_max_(r.h_max), p_min_(r.p_min), p_max_(r.p_max), points_(r.targets.size()), columns_(r.windows)
{
    if (r.h_min < 1 || r.h_max < r.h_min)
        throw Error(ErrorKind::InvalidArgument, "invalid horizon range");
    if (r.p_min < 0 || r.p_max < r.p_min)
        throw Error(ErrorKind::InvalidArgument, "invalid order range");
    if (points_ == 0)
        throw Error(ErrorKind::EmptySegment, "empty target segment");
    if (r.include_stationary)
        columns_.push_back(0);
    const std::size_t cells =
        static_cast<std::size_t>(h_max_ - h_min_ + 1) * static_cast<std::size_t>(p_max_ - p_min_ + 1) * columns_.size();
    sse_.assign(cells, 0.0);
    status_.assign(cells, Infeasibility::None);
}

double GridResult::mspe(int h, int p, std::size_t col) const
{
    if (status(h, p, col) != Infeasibility::None)
        return std::numeric_limits<double>::infinity();
    return sse(h, p, col) / static_cast<double>(points_);
}

Candidate GridResult::candidate(int p, std::size_t col) const
{
    return columns_[col] == 0 ? Candidate::stationary(p) : Candidate::local(p, columns_[col]);
}

GridResult grid_sse_reference(const Series& x, const GridRequest& request)
{
    GridResult out(request);
    for (int h = request.h_min; h <= request.h_max; ++h) {
        for (int p = request.p_min; p <= request.p_max; ++p) {
            for (std::size_t col = 0; col < out.columns().size(); ++col) {
                const Candidate c = out.candidate(p, col);
                double sse = 0.0;
                try {
                    for (long target = request.targets.first; target <= request.targets.last; ++target) {
                        const double e = x.at(target) - forecast(x, c, target - h, h);
                        sse += e * e;
                    }
                } catch (const Error& e) {
                    out.status(h, p, col) =
                        e.kind() == ErrorKind::SingularWindow ? Infeasibility::Singular : Infeasibility::WindowOutOfRange;
                }
                out.sse(h, p, col) = sse;
            }
        }
    }
    return out;
}

namespace {

/// Scores one column of the grid. Scratch buffers are per call, so columns are independent.
void score_column(const AcovTable& table, const GridRequest& r, std::size_t col, GridResult& out)
{
    const Series& x = table.series();
    const long window = out.columns()[col];
    const int p_lo = std::max(r.p_min, 1);
    const auto t_first = r.targets.first - r.h_max;
    const auto t_last = r.targets.last - r.h_min;

    std::vector<double> g(static_cast<std::size_t>(r.p_max) + 1);
    std::vector<double> a(static_cast<std::size_t>(r.p_max));
    std::vector<double> v(static_cast<std::size_t>(r.p_max));
    linalg::NestedCholesky chol;

    const auto mark = [&](long t, int p, Infeasibility why) {
        for (int h = r.h_min; h <= r.h_max; ++h)
            if (r.targets.contains(t + h) && out.status(h, p, col) == Infeasibility::None)
                out.status(h, p, col) = why;
    };

    for (long t = t_first; t <= t_last; ++t) {
        // p = 0 forecasts zero, independent of the window
        if (r.p_min == 0) {
            for (int h = r.h_min; h <= r.h_max; ++h) {
                if (!r.targets.contains(t + h))
                    continue;
                if (!x.contains(t + h)) {
                    out.status(h, 0, col) = Infeasibility::WindowOutOfRange;
                    continue;
                }
                const double e = x[t + h];
                out.sse(h, 0, col) += e * e;
            }
        }
        if (r.p_max < p_lo)
            continue;

        const long N = window == 0 ? t - x.first() + 1 : window;
        if (N < 1 || t - N + 1 < x.first() || t > x.last()) {
            for (int p = p_lo; p <= r.p_max; ++p)
                mark(t, p, Infeasibility::WindowOutOfRange);
            continue;
        }
        const int lag_cap = static_cast<int>(std::min<long>(r.p_max, N - 1));
        std::fill(g.begin(), g.end(), 0.0);
        table.acovs(t, N, lag_cap, g.data());
        chol.factor(g, lag_cap);

        for (int p = p_lo; p <= r.p_max; ++p) {
            if (N < p + 1) {
                mark(t, p, Infeasibility::WindowOutOfRange);
                continue;
            }
            const std::span<const double> rhs(g.data() + 1, static_cast<std::size_t>(p));
            const std::span<double> ap(a.data(), static_cast<std::size_t>(p));
            bool ok = false;
            if (chol.positive_order() >= p) {
                ok = chol.rcond(p) >= linalg::kSingularRcond;
                if (ok)
                    chol.solve(p, rhs, ap);
            } else {
                ok = linalg::solve_lu(linalg::toeplitz(g, p), p, rhs, ap);
            }
            if (!ok) {
                mark(t, p, Infeasibility::Singular);
                continue;
            }
            std::copy(ap.begin(), ap.end(), v.begin());
            const std::span<double> vp(v.data(), static_cast<std::size_t>(p));
            for (int h = 1; h <= r.h_max; ++h) {
                if (h > 1)
                    hstep_advance(ap, vp);
                if (h < r.h_min || !r.targets.contains(t + h))
                    continue;
                if (t - p + 1 < x.first() || !x.contains(t + h)) {
                    if (out.status(h, p, col) == Infeasibility::None)
                        out.status(h, p, col) = Infeasibility::WindowOutOfRange;
                    continue;
                }
                double f = 0.0;
                for (int i = 1; i <= p; ++i)
                    f += vp[static_cast<std::size_t>(i - 1)] * x[t - i + 1];
                const double e = x[t + h] - f;
                out.sse(h, p, col) += e * e;
            }
        }
    }
}

} // namespace

GridResult grid_sse(const AcovTable& table, const GridRequest& request)
{
    if (request.p_max > table.max_lag())
        throw Error(ErrorKind::InvalidArgument, "acov table has too few lags for p_max");
    GridResult out(request);
    const long columns = static_cast<long>(out.columns().size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long col = 0; col < columns; ++col)
        score_column(table, request, static_cast<std::size_t>(col), out);
    return out;
}

std::vector<double> candidate_errors(const AcovTable& table, const Candidate& c, int h, SegmentRange targets)
{
    const Series& x = table.series();
    if (c.order > table.max_lag())
        throw Error(ErrorKind::InvalidArgument, "acov table has too few lags for the candidate order");
    if (!x.contains(targets.first) || !x.contains(targets.last))
        throw Error(ErrorKind::WindowOutOfRange, "segment targets are not all observed");
    std::vector<double> errors;
    errors.reserve(static_cast<std::size_t>(targets.size()));
    const int p = c.order;
    std::vector<double> g(static_cast<std::size_t>(p) + 1), a(static_cast<std::size_t>(p)), v(static_cast<std::size_t>(p));
    for (long target = targets.first; target <= targets.last; ++target) {
        const long t = target - h;
        if (p == 0) {
            errors.push_back(x[target]);
            continue;
        }
        const long N = c.cls == ForecastClass::Stationary ? t - x.first() + 1 : c.window;
        if (N < p + 1 || t - N + 1 < x.first())
            throw Error(ErrorKind::WindowOutOfRange, "window does not fit at anchor " + std::to_string(t));
        table.acovs(t, N, p, g.data());
        if (!linalg::solve_symmetric_toeplitz(g, p, std::span<const double>(g.data() + 1, static_cast<std::size_t>(p)), a))
            throw Error(ErrorKind::SingularWindow, "singular covariance matrix at t = " + std::to_string(t));
        std::copy(a.begin(), a.end(), v.begin());
        for (int eta = 2; eta <= h; ++eta)
            hstep_advance(a, v);
        double f = 0.0;
        for (int i = 1; i <= p; ++i)
            f += v[static_cast<std::size_t>(i - 1)] * x[t - i + 1];
        errors.push_back(x[target] - f);
    }
    return errors;
}

} // namespace tvs
