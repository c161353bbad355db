#include "support.hpp"

#include "tvs/error.hpp"
#include "tvs/forecasting.hpp"
#include "tvs/kernels.hpp"
#include "tvs/tvar.hpp"

#include <doctest.h>
#include <omp.h>

#include <cmath>

using namespace tvs;

TEST_CASE("order zero forecasts zero")
{
    const Series x = simulate_tvar(catalog::get("periodic1"), 100, 1);
    for (int h : {1, 3, 7})
        CHECK(forecast_ls(x, 80, h, 0, 20) == 0.0);
    CHECK(forecast_s(x, 80, 2, 0) == 0.0);
}

TEST_CASE("alternating series, order 1, two steps ahead returns the last value")
{
    const Series x = test::alternating(30);
    CHECK(forecast_ls(x, 29, 2, 1, 10) == doctest::Approx(x[29]));
    CHECK(forecast_ls(x, 30, 2, 1, 10) == doctest::Approx(x[30]));
}

TEST_CASE("composition: coefficient 0.5, last value 4, three steps ahead")
{
    // window (b, 4) with 8b / (b^2 + 16) = 0.5
    const double b = 8.0 - std::sqrt(48.0);
    const Series x({b, 4.0});
    CHECK(forecast_ls(x, 2, 1, 1, 2) == doctest::Approx(2.0));
    CHECK(forecast_ls(x, 2, 3, 1, 2) == doctest::Approx(0.5));
}

TEST_CASE("stationary forecaster is the full-past window")
{
    const Series x = simulate_tvar(catalog::get("mdl11"), 400, 4);
    for (long t : {50L, 200L, 399L})
        for (int h : {1, 4})
            CHECK(forecast_s(x, t, h, 3) == forecast_ls(x, t, h, 3, t));
}

TEST_CASE("stationary AR(1) one-step forecast agrees with the regression slope")
{
    const long T = 50000;
    const Series x = test::ar1_path(0.5, static_cast<std::size_t>(T), 91);
    const double oracle = test::lag1_slope(x.head(static_cast<std::size_t>(T - 1))) * x[T - 1];
    const double f = forecast_s(x, T - 1, 1, 1);
    CHECK(std::abs(f - oracle) <= 0.02 * std::abs(oracle));
}

TEST_CASE("forecast preconditions")
{
    const Series x = simulate_tvar(catalog::get("periodic1"), 100, 1);
    CHECK_THROWS_AS(forecast_ls(x, 50, 0, 1, 10), Error);
    CHECK_THROWS_AS(forecast_ls(x, 5, 1, 1, 10), Error);
    CHECK_THROWS_AS(forecast_ls(x, 50, 1, 5, 5), Error);
}

TEST_CASE("empirical MSPE trivial cases")
{
    const Series ones(std::vector<double>(50, 1.0));
    const auto zero = [](long, int) { return 0.0; };
    CHECK(empirical_mspe(ones, 1, {31, 40}, zero).value == 1.0);
    const auto perfect = [&](long t, int h) { return ones[t + h]; };
    const auto r = empirical_mspe(ones, 2, {31, 40}, perfect);
    CHECK(r.value == 0.0);
    CHECK(r.errors.size() == 10);
    try {
        empirical_mspe(ones, 1, {10, 9}, zero);
        FAIL("expected empty segment");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptySegment);
    }
    CHECK_THROWS_AS(empirical_mspe(ones, 1, {45, 55}, zero), Error);
}

TEST_CASE("empirical MSPE matches a literal two-loop computation")
{
    const Series x = simulate_tvar(catalog::get("periodic1"), 1200, 13);
    const long N = 150;
    const SegmentRange seg{1001, 1100};
    double sse = 0.0;
    for (long target = seg.first; target <= seg.last; ++target) {
        const long t = target - 1;
        double g0 = 0.0, g1 = 0.0;
        for (long l = t - N + 1; l <= t; ++l)
            g0 += x[l] * x[l];
        for (long l = t - N + 2; l <= t; ++l)
            g1 += x[l - 1] * x[l];
        const double a = (g1 / (N - 1)) / (g0 / N);
        const double e = x[target] - a * x[t];
        sse += e * e;
    }
    const double literal = sse / static_cast<double>(seg.size());
    const double got = empirical_mspe(x, 1, seg, make_forecaster(x, Candidate::local(1, N))).value;
    CHECK(test::rel_close(got, literal, 1e-12));
}

TEST_CASE("MSPE scales quadratically and the full pipeline keeps ratios")
{
    const Series x = simulate_tvar(catalog::get("increasing5"), 600, 3);
    const SegmentRange seg{501, 560};
    for (double c : {-3.0, 0.01, 10.0}) {
        const Series y = x.scaled(c);
        const double a = empirical_mspe(x, 2, seg, make_forecaster(x, Candidate::local(3, 90))).value;
        const double b = empirical_mspe(y, 2, seg, make_forecaster(y, Candidate::local(3, 90))).value;
        CHECK(test::rel_close(b, c * c * a, 1e-10));
    }
}

TEST_CASE("MSPE is non-negative and zero only for exact forecasts")
{
    const Series x = simulate_tvar(catalog::get("periodic2"), 300, 8);
    const auto r = empirical_mspe(x, 1, {201, 260}, make_forecaster(x, Candidate::stationary(2)));
    CHECK(r.value > 0.0);
    double sse = 0.0;
    for (double e : r.errors)
        sse += e * e;
    CHECK(test::rel_close(r.value, sse / 60.0, 1e-15));
}

namespace {

GridRequest request_for(long first, long last, int h_max, int p_max, std::vector<long> windows)
{
    GridRequest r;
    r.targets = {first, last};
    r.h_min = 1;
    r.h_max = h_max;
    r.p_min = 0;
    r.p_max = p_max;
    r.windows = std::move(windows);
    return r;
}

} // namespace

TEST_CASE("fast grid kernel agrees with the literal reference")
{
    for (const char* model : {"periodic1", "mdl11", "stationaryAR"}) {
        const Series x = simulate_tvar(catalog::get(model), 700, 44);
        const GridRequest req = request_for(601, 650, 4, 5, {20, 35, 60, 100});
        const GridResult fast = grid_sse(AcovTable(x, 5), req);
        const GridResult ref = grid_sse_reference(x, req);
        for (int h = 1; h <= 4; ++h)
            for (int p = 0; p <= 5; ++p)
                for (std::size_t c = 0; c < fast.columns().size(); ++c) {
                    CHECK(fast.status(h, p, c) == ref.status(h, p, c));
                    if (ref.status(h, p, c) == Infeasibility::None)
                        CHECK(test::rel_close(fast.mspe(h, p, c), ref.mspe(h, p, c), 1e-10));
                }
    }
}

TEST_CASE("grid marks windows that do not fit as infeasible")
{
    const Series x = simulate_tvar(catalog::get("periodic2"), 200, 4);
    const GridRequest req = request_for(151, 170, 2, 2, {10, 160});
    const GridResult fast = grid_sse(AcovTable(x, 2), req);
    const GridResult ref = grid_sse_reference(x, req);
    CHECK(fast.status(1, 1, 1) == Infeasibility::WindowOutOfRange);
    CHECK(ref.status(1, 1, 1) == Infeasibility::WindowOutOfRange);
    CHECK(fast.status(1, 0, 1) == Infeasibility::None);
    CHECK(std::isinf(fast.mspe(1, 1, 1)));
    CHECK(fast.status(1, 1, 0) == Infeasibility::None);
}

TEST_CASE("grid marks singular windows")
{
    std::vector<double> v(300, 0.0);
    for (std::size_t i = 0; i < 100; ++i)
        v[i] = std::sin(static_cast<double>(i));
    const Series x(v);
    const GridRequest req = request_for(251, 260, 1, 2, {30});
    const GridResult fast = grid_sse(AcovTable(x, 2), req);
    const GridResult ref = grid_sse_reference(x, req);
    CHECK(fast.status(1, 1, 0) == Infeasibility::Singular);
    CHECK(ref.status(1, 1, 0) == Infeasibility::Singular);
    CHECK(fast.status(1, 1, 1) == Infeasibility::None);
}

TEST_CASE("grid kernel output does not depend on the thread count")
{
    const Series x = simulate_tvar(catalog::get("increasing1"), 3000, 5);
    const GridRequest req = request_for(2801, 2900, 3, 7, {100, 200, 300, 400, 500, 600, 700});
    const AcovTable table(x, 7);
    const int before = omp_get_max_threads();
    omp_set_num_threads(1);
    const GridResult one = grid_sse(table, req);
    omp_set_num_threads(4);
    const GridResult four = grid_sse(table, req);
    omp_set_num_threads(before);
    for (int h = 1; h <= 3; ++h)
        for (int p = 0; p <= 7; ++p)
            for (std::size_t c = 0; c < one.columns().size(); ++c)
                CHECK(one.sse(h, p, c) == four.sse(h, p, c));
}

TEST_CASE("per-candidate errors match the reference forecasters")
{
    const Series x = simulate_tvar(catalog::get("periodic1"), 900, 7);
    const AcovTable table(x, 4);
    for (const Candidate& c : {Candidate::local(3, 80), Candidate::stationary(4), Candidate::local(0, 50)}) {
        const auto fast = candidate_errors(table, c, 3, {801, 850});
        const auto ref = empirical_mspe(x, 3, {801, 850}, make_forecaster(x, c)).errors;
        REQUIRE(fast.size() == ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i)
            CHECK(test::rel_close(fast[i], ref[i], 1e-10));
    }
}
