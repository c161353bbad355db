#pragma once

#include "tvs/series.hpp"

#include <functional>
#include <string_view>
#include <vector>

namespace tvs {

enum class ForecastClass { Stationary, LocallyStationary };

std::string_view to_string(ForecastClass c) noexcept; ///< "s" or "ls"

/// A member of either forecaster family: stationary AR(p) fitted on the whole
/// past, or tvAR(p) fitted on the last `window` observations.
struct Candidate {
    ForecastClass cls = ForecastClass::Stationary;
    int order = 0;
    long window = 0; ///< 0 for the stationary class

    static Candidate stationary(int p) { return {ForecastClass::Stationary, p, 0}; }
    static Candidate local(int p, long N) { return {ForecastClass::LocallyStationary, p, N}; }

    friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Contiguous set of target indices {first, ..., last}.
struct SegmentRange {
    long first = 1;
    long last = 0;

    long size() const noexcept { return last >= first ? last - first + 1 : 0; }
    bool contains(long t) const noexcept { return t >= first && t <= last; }

    friend bool operator==(const SegmentRange&, const SegmentRange&) = default;
};

/// h-step plug-in forecast of X_{t+h} from the tvAR(p) fit on X_{t-N+1..t}.
double forecast_ls(const Series& x, long t, int h, int p, long N);

/// h-step plug-in forecast of X_{t+h} from the AR(p) fit on X_1..X_t.
double forecast_s(const Series& x, long t, int h, int p);

double forecast(const Series& x, const Candidate& c, long t, int h);

/// Forecast of X_{t+h} given anchor t.
using Forecaster = std::function<double(long t, int h)>;

Forecaster make_forecaster(const Series& x, const Candidate& c);

struct MspeResult {
    double value = 0.0;
    std::vector<double> errors; ///< X_{t+h} - forecast, in target order
};

/// Mean squared h-step error over targets t+h in `segment`, anchored at t = target - h.
/// `truth` must cover the segment; the forecaster only ever sees anchors.
MspeResult empirical_mspe(const Series& truth, int h, SegmentRange segment, const Forecaster& forecaster);

} // namespace tvs
