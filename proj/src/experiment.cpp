#include "tvs/experiment.hpp"

#include "tvs/error.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <map>

namespace tvs {

SelectionConfig ExperimentPlan::selection_config() const
{
    SelectionConfig c = SelectionConfig::defaults_for(n);
    if (m)
        c.m = *m;
    if (p_max)
        c.p_max = *p_max;
    if (windows)
        c.windows = *windows;
    c.max_horizon = max_horizon;
    return c;
}

void ExperimentPlan::validate() const
{
    if (!catalog::contains(model))
        throw Error(ErrorKind::InvalidArgument, "unknown model '" + model + "'");
    if (reps < 0)
        throw Error(ErrorKind::InvalidArgument, "replication count must be non-negative");
    if (n < 16)
        throw Error(ErrorKind::InvalidArgument, "n must be at least 16");
    for (double d : deltas)
        if (!(d >= 0.0) || !std::isfinite(d))
            throw Error(ErrorKind::InvalidArgument, "delta values must be finite and non-negative");
    const SelectionConfig c = selection_config();
    if (c.m < 1 || c.m >= n)
        throw Error(ErrorKind::InvalidArgument, "segment length must lie in [1, n)");
    c.validate(n - c.m);
}

ReplicationRecord run_replication(const ExperimentPlan& plan, const TvarSpec& spec, const SelectionConfig& config,
                                  long index)
{
    ReplicationRecord rec;
    rec.index = index;
    rec.seed = mix_seed(plan.seed, static_cast<std::uint64_t>(index));
    try {
        const Series path = simulate_tvar(spec, static_cast<std::size_t>(plan.n), rec.seed);
        const long T = plan.n - config.m;
        const Series observed = path.head(static_cast<std::size_t>(T));
        const auto test = path.values().subspan(static_cast<std::size_t>(T));
        const SelectionReport report = run_procedure(observed, config, test);
        for (const auto& r : report.horizons)
            rec.horizons.push_back({r.h, r.stationary.order, r.local.order, r.local.window, r.mspe_s[1], r.mspe_ls[1],
                                    r.mspe_s[2], r.mspe_ls[2]});
    } catch (const Error& e) {
        rec.ok = false;
        rec.error = std::string(to_string(e.kind())) + ": " + e.what();
        rec.horizons.clear();
    }
    return rec;
}

std::vector<ReplicationRecord> run_experiment(const ExperimentPlan& plan)
{
    plan.validate();
    const TvarSpec spec = catalog::get(plan.model);
    const SelectionConfig config = plan.selection_config();
    std::vector<ReplicationRecord> records(static_cast<std::size_t>(plan.reps));
    const int threads = plan.threads > 0 ? plan.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long r = 0; r < plan.reps; ++r)
        records[static_cast<std::size_t>(r)] = run_replication(plan, spec, config, r);
    return records;
}

std::vector<DecisionCell> same_decision_table(const std::vector<ReplicationRecord>& records,
                                              const std::vector<double>& deltas, const std::vector<int>& horizons)
{
    std::vector<DecisionCell> out;
    if (records.empty())
        return out;
    for (double delta : deltas) {
        for (int h : horizons) {
            DecisionCell cell;
            cell.delta = delta;
            cell.h = h;
            long counts[2][2] = {{0, 0}, {0, 0}};
            for (const auto& rec : records) {
                if (!rec.ok)
                    continue;
                const auto it = std::find_if(rec.horizons.begin(), rec.horizons.end(),
                                             [h](const HorizonRecord& x) { return x.h == h; });
                if (it == rec.horizons.end())
                    continue;
                const int on2 = choose_local(it->mspe2_s, it->mspe2_ls, delta) ? 1 : 0;
                const int on3 = choose_local(it->mspe3_s, it->mspe3_ls, delta) ? 1 : 0;
                ++counts[on2][on3];
                ++cell.runs;
            }
            if (cell.runs > 0) {
                const double n = static_cast<double>(cell.runs);
                cell.ls_ls = static_cast<double>(counts[1][1]) / n;
                cell.ls_s = static_cast<double>(counts[1][0]) / n;
                cell.s_ls = static_cast<double>(counts[0][1]) / n;
                cell.s_s = static_cast<double>(counts[0][0]) / n;
                cell.same = static_cast<double>(counts[1][1] + counts[0][0]) / n;
                cell.ls_chosen = static_cast<double>(counts[1][1] + counts[1][0]) / n;
            }
            out.push_back(cell);
        }
    }
    return out;
}

std::vector<RatioPoint> ratio_curves(const std::vector<ReplicationRecord>& records)
{
    std::map<int, RatioPoint> acc;
    for (const auto& rec : records) {
        if (!rec.ok)
            continue;
        for (const auto& x : rec.horizons) {
            if (!std::isfinite(x.mspe2_s) || !std::isfinite(x.mspe2_ls) || !std::isfinite(x.mspe3_s) ||
                !std::isfinite(x.mspe3_ls))
                continue;
            auto& p = acc[x.h];
            p.h = x.h;
            ++p.runs;
            p.mean2_s += x.mspe2_s;
            p.mean2_ls += x.mspe2_ls;
            p.mean3_s += x.mspe3_s;
            p.mean3_ls += x.mspe3_ls;
        }
    }
    std::vector<RatioPoint> out;
    for (auto& [h, p] : acc) {
        const double n = static_cast<double>(p.runs);
        p.mean2_s /= n;
        p.mean2_ls /= n;
        p.mean3_s /= n;
        p.mean3_ls /= n;
        p.ratio2 = mspe_ratio(p.mean2_s, p.mean2_ls);
        p.ratio3 = mspe_ratio(p.mean3_s, p.mean3_ls);
        out.push_back(p);
    }
    return out;
}

} // namespace tvs
