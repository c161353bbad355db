#include "tvs/series.hpp"

#include "tvs/error.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace tvs {

Series::Series(std::vector<double> values, long origin)
    : values_(std::make_shared<const std::vector<double>>(std::move(values))), origin_(origin)
{
    if (values_->empty())
        throw Error(ErrorKind::InvalidArgument, "series must contain at least one value");
    for (std::size_t i = 0; i < values_->size(); ++i) {
        if (!std::isfinite((*values_)[i]))
            throw Error(ErrorKind::InvalidArgument,
                        "series value at index " + std::to_string(origin + static_cast<long>(i)) +
                            " is not finite");
    }
}

double Series::at(long t) const
{
    if (!contains(t))
        throw Error(ErrorKind::WindowOutOfRange,
                    "time index " + std::to_string(t) + " outside [" + std::to_string(first()) + ", " +
                        std::to_string(last()) + "]");
    return (*this)[t];
}

Series Series::scaled(double c) const
{
    std::vector<double> out(values_->begin(), values_->end());
    for (double& v : out)
        v *= c;
    return Series(std::move(out), origin_);
}

Series Series::head(std::size_t n) const
{
    if (n == 0 || n > size())
        throw Error(ErrorKind::InvalidArgument, "head length out of range");
    return Series(std::vector<double>(values_->begin(), values_->begin() + static_cast<long>(n)), origin_);
}

double mean(std::span<const double> values)
{
    if (values.empty())
        return 0.0;
    // Two passes: the correction term removes most of the rounding in the first sum.
    const double n = static_cast<double>(values.size());
    const double rough = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double correction = 0.0;
    for (double v : values)
        correction += v - rough;
    return rough + correction / n;
}

Series demean(const Series& x)
{
    const double mu = mean(x.values());
    std::vector<double> out(x.values().begin(), x.values().end());
    for (double& v : out)
        v -= mu;
    return Series(std::move(out), x.first());
}

Series extend(const Series& head, std::span<const double> continuation)
{
    std::vector<double> out(head.values().begin(), head.values().end());
    out.insert(out.end(), continuation.begin(), continuation.end());
    return Series(std::move(out), head.first());
}

} // namespace tvs
