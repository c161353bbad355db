#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace tvs {

/// Finite real-valued sequence indexed by time, X_origin, ..., X_{origin+size-1}.
/// Time indices are 1-based by default. Storage is shared and never mutated, so
/// copies are cheap and safe to hand to other threads.
class Series {
public:
    explicit Series(std::vector<double> values, long origin = 1);

    std::size_t size() const noexcept { return values_->size(); }
    long first() const noexcept { return origin_; }
    long last() const noexcept { return origin_ + static_cast<long>(size()) - 1; }

    /// Value at time index t. Unchecked.
    double operator[](long t) const noexcept
    {
        return (*values_)[static_cast<std::size_t>(t - origin_)];
    }

    /// Value at time index t; throws window-out-of-range when t is not observed.
    double at(long t) const;

    bool contains(long t) const noexcept { return t >= first() && t <= last(); }

    std::span<const double> values() const noexcept { return *values_; }

    Series scaled(double c) const;

    /// The first n observations (same origin).
    Series head(std::size_t n) const;

private:
    std::shared_ptr<const std::vector<double>> values_;
    long origin_;
};

double mean(std::span<const double> values);

/// Subtracts the arithmetic mean.
Series demean(const Series& x);

/// Concatenation of `head` with values that continue its time index.
Series extend(const Series& head, std::span<const double> continuation);

} // namespace tvs
