#include "support.hpp"

#include "tvs/error.hpp"
#include "tvs/experiment.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace tvs;

namespace {

ExperimentPlan plan_for(const std::string& model, long n, long reps, int H)
{
    ExperimentPlan p;
    p.model = model;
    p.n = n;
    p.reps = reps;
    p.seed = 2024;
    p.max_horizon = H;
    return p;
}

bool identical(const std::vector<ReplicationRecord>& a, const std::vector<ReplicationRecord>& b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].seed != b[i].seed || a[i].ok != b[i].ok || a[i].horizons.size() != b[i].horizons.size())
            return false;
        for (std::size_t j = 0; j < a[i].horizons.size(); ++j) {
            const auto& x = a[i].horizons[j];
            const auto& y = b[i].horizons[j];
            if (x.p_s != y.p_s || x.p_ls != y.p_ls || x.N_ls != y.N_ls || x.mspe2_s != y.mspe2_s ||
                x.mspe2_ls != y.mspe2_ls || x.mspe3_s != y.mspe3_s || x.mspe3_ls != y.mspe3_ls)
                return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("plan defaults and validation")
{
    const ExperimentPlan p = plan_for("periodic1", 10000, 1, 10);
    const SelectionConfig c = p.selection_config();
    CHECK(c.m == 627);
    CHECK(c.p_max == 7);
    CHECK(c.max_horizon == 10);
    CHECK(c.windows.size() == 25);
    ExperimentPlan bad = p;
    bad.model = "nope";
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = p;
    bad.deltas = {-0.1};
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("no replications")
{
    const auto r = run_experiment(plan_for("periodic1", 500, 0, 3));
    CHECK(r.empty());
    CHECK(same_decision_table(r, {0.0}, {1}).empty());
    CHECK(ratio_curves(r).empty());
}

TEST_CASE("single white-noise replication")
{
    const auto r = run_experiment(plan_for("indepNonHetero", 1000, 1, 10));
    REQUIRE(r.size() == 1);
    CHECK(r[0].ok);
    CHECK(r[0].seed == mix_seed(2024, 0));
    REQUIRE(r[0].horizons.size() == 10);
    for (const auto& h : r[0].horizons) {
        for (double v : {h.mspe2_s, h.mspe2_ls, h.mspe3_s, h.mspe3_ls}) {
            CHECK(v >= 0.5);
            CHECK(v <= 2.0);
        }
        CHECK(h.p_s >= 0);
        CHECK(h.p_s <= 7);
        const auto grid = default_n_grid(1000);
        CHECK(std::find(grid.begin(), grid.end(), h.N_ls) != grid.end());
    }
    const auto curves = ratio_curves(r);
    REQUIRE(curves.size() == 10);
    CHECK(curves[3].ratio3 == doctest::Approx(r[0].horizons[3].mspe3_s / r[0].horizons[3].mspe3_ls));
}

TEST_CASE("decision tables")
{
    ReplicationRecord rec;
    rec.horizons = {{1, 1, 1, 50, 1.2, 1.0, 1.3, 1.0}};
    const std::vector<ReplicationRecord> same(5, rec);
    const auto cells = same_decision_table(same, {0.0, 0.1, 0.5}, {1});
    REQUIRE(cells.size() == 3);
    CHECK(cells[0].same == 1.0);
    CHECK(cells[0].ls_ls == 1.0);
    CHECK(cells[2].same == 1.0);
    CHECK(cells[2].s_s == 1.0);

    const std::vector<double> deltas{0.0, 0.01, 0.05, 0.1, 0.15, 0.2, 0.4, 0.6};
    const auto records = run_experiment(plan_for("increasing4", 600, 60, 4));
    const auto table = same_decision_table(records, deltas, {1, 2, 3, 4});
    for (const auto& c : table) {
        CHECK(c.runs == 60);
        CHECK(std::abs(c.ls_ls + c.ls_s + c.s_ls + c.s_s - 1.0) <= 1e-12);
        CHECK(c.same == doctest::Approx(c.ls_ls + c.s_s));
        for (double v : {c.same, c.ls_chosen})
            CHECK((v >= 0.0 && v <= 1.0));
    }
    for (int h = 1; h <= 4; ++h)
        for (std::size_t d = 1; d < deltas.size(); ++d)
            CHECK(table[d * 4 + static_cast<std::size_t>(h - 1)].ls_chosen <=
                  table[(d - 1) * 4 + static_cast<std::size_t>(h - 1)].ls_chosen);
}

TEST_CASE("records do not depend on the worker count")
{
    ExperimentPlan p = plan_for("mdl11", 800, 24, 3);
    p.threads = 1;
    const auto one = run_experiment(p);
    p.threads = 4;
    const auto four = run_experiment(p);
    CHECK(identical(one, four));
    CHECK(identical(one, run_experiment(p)));
}

TEST_CASE("short series: the stationary forecaster wins on average")
{
    const auto curves = ratio_curves(run_experiment(plan_for("periodic1", 100, 500, 1)));
    REQUIRE(curves.size() == 1);
    MESSAGE("periodic1 n=100 ratio3 = " << curves[0].ratio3);
    CHECK(curves[0].ratio3 < 1.0);
}

TEST_CASE("strong drift: the localised forecaster wins on average")
{
    const auto curves = ratio_curves(run_experiment(plan_for("increasing5", 1000, 500, 1)));
    REQUIRE(curves.size() == 1);
    MESSAGE("increasing5 n=1000 ratio3 = " << curves[0].ratio3);
    CHECK(curves[0].ratio3 > 1.05);
}
