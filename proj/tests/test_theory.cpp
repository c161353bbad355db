#include "support.hpp"

#include "tvs/error.hpp"
#include "tvs/selection.hpp"
#include "tvs/theory.hpp"
#include "tvs/tvar.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace tvs;
using namespace tvs::theory;

namespace {

double round_sig(double x, int digits)
{
    if (x == 0.0)
        return 0.0;
    const double scale = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(std::abs(x)))));
    return std::round(x * scale) / scale;
}

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

} // namespace

TEST_CASE("tangent covariances")
{
    const auto wn = local_covs(constant_ar({0.0}), 0.3, 4);
    CHECK(wn[0] == 1.0);
    for (int k = 1; k <= 4; ++k)
        CHECK(wn[static_cast<std::size_t>(k)] == 0.0);

    CHECK(local_cov(constant_ar({0.5}), 0.1, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(local_cov(constant_ar({0.5}), 0.1, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    const auto g = local_covs(motivating_example(), 0.9, 1);
    CHECK(test::rel_close(g[1] / g[0], 0.285 / 0.885, 1e-12));

    const TvarSpec p1 = catalog::get("periodic1");
    for (double u : {0.0, 0.13, 0.5, 0.77, 1.0}) {
        const double a = p1.coefficients_at(u)[0];
        const auto c = local_covs(p1, u, 5);
        for (int k = 0; k <= 5; ++k)
            CHECK(test::rel_close(c[static_cast<std::size_t>(k)], std::pow(a, k) / (1.0 - a * a), 1e-12));
    }

    const auto mdl = local_covs(catalog::get("mdl12"), 0.5, 6);
    CHECK(test::rel_close(mdl[1], 1.0 * mdl[0] - 0.81 * mdl[1], 1e-12));
    for (std::size_t k = 2; k <= 6; ++k)
        CHECK(test::rel_close(mdl[k], 1.0 * mdl[k - 1] - 0.81 * mdl[k - 2], 1e-12));
    CHECK(test::rel_close(mdl[0], 1.0 * mdl[1] - 0.81 * mdl[2] + 1.0, 1e-12));

    for (const auto& label : catalog::labels()) {
        const TvarSpec spec = catalog::get(label);
        for (double u : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const auto c = local_covs(spec, u, 4);
            CHECK(c[0] > 0.0);
            for (double v : c)
                CHECK(std::abs(v) <= c[0] * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("averaged covariances")
{
    const TvarSpec ar = constant_ar({0.5});
    CHECK(averaged_cov(ar, 0.7, 0.4, 1) == local_cov(ar, 0.7, 1));
    const TvarSpec p1 = catalog::get("periodic1");
    CHECK(averaged_cov(p1, 0.6, 0.0, 2) == local_cov(p1, 0.6, 2));

    const TvarSpec inc2 = catalog::get("increasing2");
    const int points = 1000000;
    double riemann = 0.0;
    for (int i = 0; i < points; ++i) {
        const double s = 0.5 + 0.5 * (i + 0.5) / points;
        const double a = 0.5 + 0.19 * s;
        riemann += 1.0 / (1.0 - a * a);
    }
    riemann /= points;
    CHECK(test::rel_close(averaged_cov(inc2, 1.0, 0.5, 0), riemann, 1e-8));
}

TEST_CASE("averaged coefficients")
{
    for (double d : {0.0, 0.1, 0.6})
        CHECK(a_delta(constant_ar({0.5}), 0.8, d, 1)[0] == doctest::Approx(0.5).epsilon(1e-13));
    const TvarSpec inc = catalog::get("increasing4");
    for (double u : {0.2, 0.9})
        CHECK(test::rel_close(a_delta(inc, u, 0.0, 1)[0], inc.coefficients_at(u)[0], 1e-12));
    const auto a = a_delta(motivating_example(), 0.9, 0.0, 2);
    CHECK(std::abs(a[0] - 0.285) <= 1e-12);
    CHECK(std::abs(a[1] - 0.115) <= 1e-12);
    CHECK(a_delta(inc, 0.5, 0.3, 0).empty());

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (const auto& label : catalog::labels()) {
        const TvarSpec spec = catalog::get(label);
        const double u = U(rng), d = 0.5 * U(rng);
        for (int p = 1; p <= 3; ++p) {
            const auto ad = a_delta(spec, u, d, p);
            CHECK(v_delta(spec, u, d, p, 1) == ad);
            for (int h : {2, 5}) {
                const auto v = v_delta(spec, u, d, p, h);
                const auto oracle = test::matrix_power_row(ad, h);
                for (int i = 0; i < p; ++i)
                    CHECK(std::abs(v[static_cast<std::size_t>(i)] - oracle[static_cast<std::size_t>(i)]) <= 1e-12);
            }
        }
    }
}

TEST_CASE("population MSPE closed cases")
{
    const TvarSpec wn = constant_ar({0.0});
    for (double d1 : {0.0, 0.3})
        CHECK(population_mspe(wn, 0.4, d1, 0.2, 0, 3) == doctest::Approx(1.0));
    const TvarSpec ar = constant_ar({0.5});
    CHECK(population_mspe(ar, 0.5, 0.2, 0.1, 1, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(population_mspe(motivating_example(), 0.9, 0.0, 0.0, 2, 1) - 1.0) <= 1e-6);

    // Monte Carlo MSPE of the known-coefficient two-step predictor a^2 X_t
    const Series x = test::ar1_path(0.5, 1000002, 2024);
    double sse = 0.0;
    for (long t = 1; t <= 1000000; ++t) {
        const double e = x[t + 2] - 0.25 * x[t];
        sse += e * e;
    }
    const double mc = sse / 1e6;
    const double pop = population_mspe(ar, 0.5, 0.2, 0.1, 1, 2);
    CHECK(std::abs(pop - mc) <= 0.01 * mc);
    CHECK(test::rel_close(pop, 1.25, 1e-12));
}

TEST_CASE("population MSPE is stable under quadrature refinement")
{
    const Quadrature q;
    for (const auto& label : catalog::labels()) {
        const TvarSpec spec = catalog::get(label);
        for (auto [u, d1, d2, p, h] : {std::tuple{0.9, 0.9, 0.06, 2, 1}, std::tuple{0.85, 0.12, 0.07, 3, 4},
                                       std::tuple{0.4, 0.3, 0.2, 1, 2}}) {
            const double a = population_mspe(spec, u, d1, d2, p, h, q);
            const double b = population_mspe(spec, u, d1, d2, p, h, q.doubled());
            CHECK(std::abs(a - b) <= 1e-8 * std::abs(b));
        }
    }
}

TEST_CASE("order zero and stationary identities")
{
    const TvarSpec p2 = catalog::get("periodic2");
    const double base = population_mspe(p2, 0.7, 0.1, 0.1, 0, 1);
    for (double d1 : {0.0, 0.3, 0.7})
        for (int h : {1, 3, 9})
            CHECK(population_mspe(p2, 0.7, d1, 0.1, 0, h) == doctest::Approx(base).epsilon(1e-14));
    for (const char* label : {"stationaryAR", "mdl12", "indepNonHetero"}) {
        const TvarSpec spec = catalog::get(label);
        const double ref = population_mspe(spec, 0.5, 0.2, 0.1, 2, 2);
        for (double u : {0.1, 0.9})
            for (double d1 : {0.0, 0.5})
                CHECK(test::rel_close(population_mspe(spec, u, d1, 0.05, 2, 2), ref, 1e-12));
    }
}

TEST_CASE("separation function")
{
    for (const auto& label : catalog::labels()) {
        const FDeltaTerms t = f_delta_terms(catalog::get(label), 1841, 159, 7, default_n_grid(2000), 1);
        CHECK(f_delta(t, 0.0) == 0.0);
    }

    const long n = 10000, m = default_segment_length(n);
    const FDeltaTerms p1 = f_delta_terms(catalog::get("periodic1"), n - m, m, 7, default_n_grid(n), 1);
    CHECK(round_sig(f_delta(p1, 0.2), 2) == doctest::Approx(0.12));
    CHECK(round_sig(f_delta(p1, 0.4), 2) == doctest::Approx(0.32));

    for (long size : {500L, 2000L, 10000L}) {
        const long ms = default_segment_length(size);
        const FDeltaTerms s = f_delta_terms(catalog::get("stationaryAR"), size - ms, ms, 7, default_n_grid(size), 1);
        CHECK(round_sig(f_delta(s, 0.05), 2) == doctest::Approx(0.05));
        CHECK(round_sig(f_delta(s, 0.1), 2) == doctest::Approx(0.1));
    }
}

TEST_CASE("discrepancy bounds")
{
    for (const char* label : {"stationaryAR", "mdl12", "indepNonHetero"}) {
        const DBounds d = d_bounds(catalog::get(label), 1841, 159, 1);
        CHECK(d.sup == 0.0);
        CHECK(d.inf == 0.0);
    }
    for (const auto& label : catalog::labels()) {
        const DBounds d = d_bounds(catalog::get(label), 1841, 159, 1);
        CHECK(d.sup <= 2.0);
        CHECK(d.inf <= d.sup);
    }

    // closed forms for a(s) = 0.5 + 0.49 s on the averaging span
    const long T = 2000, m = 159;
    const double beta = 0.49, span = static_cast<double>(T - m) / T;
    const auto a = [&](double s) { return 0.5 + beta * s; };
    const auto gap = [&](double u) {
        const double g0 = (std::atanh(a(u)) - std::atanh(a(u - span))) / beta;
        const double g1 = (std::log(1.0 - a(u - span) * a(u - span)) - std::log(1.0 - a(u) * a(u))) / (2.0 * beta);
        return std::abs(g1 / g0 - a(u));
    };
    const double lo = static_cast<double>(T - m) / T, hi = 1.0 / T * static_cast<double>(T);
    double sup = 0.0, inf = std::numeric_limits<double>::infinity();
    const int points = 100000;
    for (int i = 0; i <= points; ++i) {
        const double v = gap(lo + (hi - lo) * i / points);
        sup = std::max(sup, v);
        inf = std::min(inf, v);
    }
    const DBounds d = d_bounds(catalog::get("increasing5"), T, m, 1);
    CHECK(d.inf > 0.0);
    CHECK(std::abs(d.inf - inf) <= 1e-4);
    CHECK(std::abs(d.sup - sup) <= 1e-4);
    CHECK(std::abs(d_gap(catalog::get("increasing5"), T, m, 1, 0.95) - gap(0.95)) <= 1e-10);
}

TEST_CASE("corollary thresholds")
{
    const CorollaryThresholds ar = corollary_thresholds(constant_ar({0.5}), 1000, 88, 1);
    CHECK(ar.rho == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ar.delta_lower == 0.0);
    CHECK(ar.delta_upper == 0.0);
    CHECK_FALSE(ar.n_condition.has_value());

    const TvarSpec dec = catalog::get("decreasing2");
    const CorollaryThresholds c = corollary_thresholds(dec, 1000, 88, 1, 1.0, 200);
    const DBounds d = d_bounds(dec, 1000, 88, 1);
    CHECK(c.delta_upper == doctest::Approx(d.inf * d.inf / 8.0).epsilon(1e-15));
    CHECK(c.delta_lower == doctest::Approx(2.0 * d.sup * d.sup / (1.0 - c.rho * c.rho)).epsilon(1e-15));
    CHECK(c.rho == doctest::Approx(0.5).epsilon(1e-9));
    REQUIRE(c.n_condition.has_value());
    CHECK(*c.n_condition == (d.inf * d.inf >= 2.0 * 0.2 * 0.2));
}

TEST_CASE("numerical failures")
{
    CHECK(kind_of([] { local_covs(constant_ar({1.0}), 0.5, 2); }) == ErrorKind::UnstableTangent);
    const TvarSpec ramp = TvarSpec::make("ramp", {[](double u) { return 2.0 * u; }});
    CHECK_NOTHROW(averaged_cov(ramp, 0.4, 0.3, 0));
    CHECK(kind_of([&] { averaged_cov(ramp, 0.8, 0.6, 0); }) == ErrorKind::UnstableTangent);
    CHECK(kind_of([] { a_delta(constant_ar({0.0}, 0.0), 0.5, 0.1, 1); }) == ErrorKind::SingularAveragedMatrix);
    CHECK(spectral_radius({0.5, 0.3, -0.2}) == doctest::Approx(spectral_radius({0.5, 0.3, -0.2, 0.0})));
    CHECK(spectral_radius({1.0, -0.81}) == doctest::Approx(0.9));
}
