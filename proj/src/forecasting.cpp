#include "tvs/forecasting.hpp"

#include "tvs/error.hpp"
#include "tvs/estimation.hpp"

#include <string>

namespace tvs {
namespace {

double apply(const Series& x, long t, const CoeffVector& v)
{
    if (t - v.order() + 1 < x.first())
        throw Error(ErrorKind::WindowOutOfRange, "not enough lags before t = " + std::to_string(t));
    double f = 0.0;
    for (int i = 1; i <= v.order(); ++i)
        f += v.values[static_cast<std::size_t>(i - 1)] * x[t - i + 1];
    return f;
}

} // namespace

std::string_view to_string(ForecastClass c) noexcept
{
    return c == ForecastClass::Stationary ? "s" : "ls";
}

double forecast_ls(const Series& x, long t, int h, int p, long N)
{
    if (h < 1)
        throw Error(ErrorKind::InvalidArgument, "horizon must be at least 1");
    if (p == 0)
        return 0.0;
    return apply(x, t, hstep_coeffs(yule_walker(x, t, N, p), h));
}

double forecast_s(const Series& x, long t, int h, int p)
{
    return forecast_ls(x, t, h, p, t - x.first() + 1);
}

double forecast(const Series& x, const Candidate& c, long t, int h)
{
    return c.cls == ForecastClass::Stationary ? forecast_s(x, t, h, c.order) : forecast_ls(x, t, h, c.order, c.window);
}

Forecaster make_forecaster(const Series& x, const Candidate& c)
{
    return [x, c](long t, int h) { return forecast(x, c, t, h); };
}

MspeResult empirical_mspe(const Series& truth, int h, SegmentRange segment, const Forecaster& forecaster)
{
    if (segment.size() == 0)
        throw Error(ErrorKind::EmptySegment, "empty evaluation segment");
    if (!truth.contains(segment.first) || !truth.contains(segment.last))
        throw Error(ErrorKind::WindowOutOfRange, "segment targets are not all observed");
    MspeResult out;
    out.errors.reserve(static_cast<std::size_t>(segment.size()));
    double sse = 0.0;
    for (long target = segment.first; target <= segment.last; ++target) {
        const double e = truth[target] - forecaster(target - h, h);
        out.errors.push_back(e);
        sse += e * e;
    }
    out.value = sse / static_cast<double>(segment.size());
    return out;
}

} // namespace tvs
