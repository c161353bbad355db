#include "cli_app.hpp"

#include "manifest.hpp"

#include "tvs/csv.hpp"
#include "tvs/error.hpp"
#include "tvs/experiment.hpp"
#include "tvs/report.hpp"
#include "tvs/selection.hpp"
#include "tvs/theory.hpp"
#include "tvs/tvar.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

namespace tvs::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<double> kProtocolDeltas{0.0, 0.01, 0.05, 0.1, 0.15, 0.2, 0.4, 0.6};

struct WindowFlags {
    std::optional<long> n_min, n_max, n_count;

    /// Every integer from n_min to n_max, or n_count evenly spaced ones.
    std::optional<std::vector<long>> resolve() const
    {
        if (!n_min && !n_max && !n_count)
            return std::nullopt;
        if (!n_min || !n_max)
            throw Error(ErrorKind::InvalidArgument, "--n-min and --n-max must be given together");
        if (*n_min < 1 || *n_max < *n_min)
            throw Error(ErrorKind::InvalidArgument, "need 1 <= --n-min <= --n-max");
        const long span = *n_max - *n_min;
        const long count = n_count.value_or(span + 1);
        if (count < 1 || count > span + 1)
            throw Error(ErrorKind::InvalidArgument, "--n-count must lie in [1, n_max - n_min + 1]");
        std::vector<long> grid;
        for (long i = 0; i < count; ++i) {
            const long N = count == 1 ? *n_min
                                      : *n_min + static_cast<long>(std::llround(static_cast<double>(i * span) /
                                                                                 static_cast<double>(count - 1)));
            if (grid.empty() || N > grid.back())
                grid.push_back(N);
        }
        return grid;
    }

    void add_to(CLI::App* app)
    {
        app->add_option("--n-min", n_min, "smallest window length in the grid (min N)");
        app->add_option("--n-max", n_max, "largest window length in the grid (max N)");
        app->add_option("--n-count", n_count, "number of evenly spaced windows (default: every integer)");
    }
};

struct Common {
    std::string out_dir;
    std::string format = "csv";
    int threads = 0;
};

fs::path prepare_dir(const std::string& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw Error(ErrorKind::Io, "cannot create output directory " + dir + ": " + ec.message());
    return fs::path(dir);
}

json table_json(const csv::Table& t)
{
    json rows = json::array();
    for (const auto& r : t.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < t.header.size() && i < r.size(); ++i) {
            char* end = nullptr;
            const double v = std::strtod(r[i].c_str(), &end);
            if (!r[i].empty() && end && *end == '\0' && std::isfinite(v))
                obj[t.header[i]] = v;
            else
                obj[t.header[i]] = r[i];
        }
        rows.push_back(obj);
    }
    return rows;
}

void write_table(const fs::path& dir, const std::string& stem, const csv::Table& t, const std::string& format)
{
    if (format == "json") {
        std::ofstream out(dir / (stem + ".json"));
        if (!out)
            throw Error(ErrorKind::Io, "cannot write " + (dir / (stem + ".json")).string());
        out << table_json(t).dump(2) << '\n';
    } else {
        csv::write_table(dir / (stem + ".csv"), t);
    }
}

json windows_json(const std::vector<long>& w)
{
    return json(w);
}

int cmd_simulate(const std::string& model, long n, std::uint64_t seed, const Common& common,
                 const std::vector<std::string>& argv, std::ostream& out)
{
    if (n < 1)
        throw Error(ErrorKind::InvalidArgument, "--n must be at least 1");
    const TvarSpec spec = catalog::get(model);
    const Series x = simulate_tvar(spec, static_cast<std::size_t>(n), seed);
    const fs::path dir = prepare_dir(common.out_dir);
    csv::write_series(dir / "series.csv", x, "value");
    write_manifest(dir, {{"command", "simulate"},
                         {"argv", argv},
                         {"config", {{"model", model}, {"n", n}, {"burn_in", burn_in_length(spec.order())}}},
                         {"seed", seed}});
    out << "wrote " << (dir / "series.csv").string() << '\n';
    return 0;
}

struct SelectFlags {
    std::string input;
    std::optional<long> m;
    std::optional<int> p_max;
    std::optional<int> max_horizon;
    double delta = 0.0;
    bool no_demean = false;
    bool no_holdout = false;
    WindowFlags windows;
};

int cmd_select(const SelectFlags& f, const Common& common, const std::vector<std::string>& argv, std::ostream& out)
{
    if (!fs::exists(f.input))
        throw Error(ErrorKind::InputNotFound, "input file not found: " + f.input);
    Series raw = csv::read_series(fs::path(f.input));
    const Series data = f.no_demean ? raw : demean(raw);
    const long L = static_cast<long>(data.size());

    SelectionConfig config = L >= 16 ? SelectionConfig::defaults_for(L) : SelectionConfig{};
    if (f.m)
        config.m = *f.m;
    if (f.p_max)
        config.p_max = *f.p_max;
    if (f.max_horizon)
        config.max_horizon = *f.max_horizon;
    config.delta = f.delta;
    if (auto w = f.windows.resolve())
        config.windows = *w;
    if (config.windows.empty())
        throw Error(ErrorKind::InvalidArgument, "no window grid: give --n-min/--n-max for series shorter than 16");
    if (config.m < 1)
        throw Error(ErrorKind::InvalidArgument, "--m must be at least 1");

    const long needed = (f.no_holdout ? 2 : 3) * config.m + config.windows.back();
    if (L < needed)
        throw Error(ErrorKind::InsufficientData,
                    "series has " + std::to_string(L) + " observations; at least " + std::to_string(needed) +
                        (f.no_holdout ? " (2m + max N)" : " (3m + max N, the last m held out)") + " are required");

    const long T = f.no_holdout ? L : L - config.m;
    const Series observed = data.head(static_cast<std::size_t>(T));
    const auto test = f.no_holdout ? std::span<const double>{} : data.values().subspan(static_cast<std::size_t>(T));
    const SelectionReport report = run_procedure(observed, config, test);

    const fs::path dir = prepare_dir(common.out_dir);
    if (common.format == "json") {
        std::ofstream o(dir / "report.json");
        o << to_json(report).dump(2) << '\n';
    } else {
        csv::write_table(dir / "report.csv", report_table(report));
    }
    write_table(dir, "forecasts", forecast_table(report), common.format);
    write_manifest(dir, {{"command", "select"},
                         {"argv", argv},
                         {"input", {{"path", f.input}, {"git_blob_sha1", git_blob_sha1_file(fs::path(f.input))}}},
                         {"config",
                          {{"m", config.m},
                           {"p_max", config.p_max},
                           {"windows", windows_json(config.windows)},
                           {"max_horizon", config.max_horizon},
                           {"delta", config.delta},
                           {"demean", !f.no_demean},
                           {"holdout", !f.no_holdout},
                           {"T", T}}},
                         {"seed", nullptr}});
    csv::write_table(out, report_table(report));
    return 0;
}

struct TheoryFlags {
    std::string model;
    long n = 10000;
    std::optional<long> m;
    int p_max = 7;
    std::vector<int> horizons{1};
    std::vector<double> deltas = kProtocolDeltas;
    int nodes = Quadrature{}.nodes_per_unit;
    std::optional<double> derivative_ratio;
    WindowFlags windows;
};

int cmd_theory(const TheoryFlags& f, const Common& common, const std::vector<std::string>& argv, std::ostream& out)
{
    const TvarSpec spec = catalog::get(f.model);
    if (f.n < 16)
        throw Error(ErrorKind::InvalidArgument, "--n must be at least 16");
    const long m = f.m.value_or(default_segment_length(f.n));
    const long T = f.n - m;
    const std::vector<long> windows = f.windows.resolve().value_or(default_n_grid(f.n));
    const Quadrature quad{f.nodes};

    csv::Table fd, surface, bounds;
    fd.header = {"model", "n", "h", "delta", "f_delta"};
    surface.header = {"model", "n", "h", "class", "p", "N", "mspe"};
    bounds.header = {"model", "n", "h", "D_sup", "D_inf", "rho", "delta_lower", "delta_upper", "n_condition"};
    const auto num = [](double v) { return csv::format_double(v); };
    for (int h : f.horizons) {
        const auto terms = theory::f_delta_terms(spec, T, m, f.p_max, windows, h, quad);
        for (double d : f.deltas)
            fd.rows.push_back({f.model, std::to_string(f.n), std::to_string(h), num(d), num(theory::f_delta(terms, d))});
        for (int p = 0; p <= f.p_max; ++p) {
            surface.rows.push_back({f.model, std::to_string(f.n), std::to_string(h), "s", std::to_string(p), "full",
                                    num(terms.stationary[static_cast<std::size_t>(p)])});
            for (std::size_t i = 0; i < windows.size(); ++i)
                surface.rows.push_back({f.model, std::to_string(f.n), std::to_string(h), "ls", std::to_string(p),
                                        std::to_string(windows[i]),
                                        num(terms.local[static_cast<std::size_t>(p)][i])});
        }
        std::vector<std::string> row{f.model, std::to_string(f.n), std::to_string(h)};
        try {
            const auto c = theory::corollary_thresholds(spec, T, m, h, f.derivative_ratio, windows.back(), quad);
            row.insert(row.end(), {num(c.d.sup), num(c.d.inf), num(c.rho), num(c.delta_lower), num(c.delta_upper),
                                   c.n_condition ? (*c.n_condition ? "true" : "false") : "not evaluated"});
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::CorollaryInapplicable)
                throw;
            const auto d = theory::d_bounds(spec, T, m, h, quad);
            row.insert(row.end(), {num(d.sup), num(d.inf), "inapplicable", "inapplicable", "inapplicable",
                                   "inapplicable"});
        }
        bounds.rows.push_back(row);
    }
    const fs::path dir = prepare_dir(common.out_dir);
    write_table(dir, "f_delta", fd, common.format);
    write_table(dir, "mspe_surface", surface, common.format);
    write_table(dir, "d_bounds", bounds, common.format);
    json cfg = {{"model", f.model},      {"n", f.n},           {"m", m},           {"T", T},
                {"p_max", f.p_max},      {"windows", windows}, {"horizons", f.horizons},
                {"deltas", f.deltas},    {"nodes_per_unit", f.nodes}};
    cfg["derivative_ratio"] = f.derivative_ratio ? json(*f.derivative_ratio) : json(nullptr);
    write_manifest(dir, {{"command", "theory"}, {"argv", argv}, {"config", cfg}, {"seed", nullptr}});
    csv::write_table(out, fd);
    return 0;
}

struct ExperimentFlags {
    ExperimentPlan plan;
    std::optional<long> m;
    std::optional<int> p_max;
    WindowFlags windows;
};

int cmd_experiment(ExperimentFlags f, const Common& common, const std::vector<std::string>& argv, std::ostream& out)
{
    ExperimentPlan& plan = f.plan;
    plan.m = f.m;
    plan.p_max = f.p_max;
    plan.windows = f.windows.resolve();
    plan.threads = common.threads;
    const SelectionConfig config = plan.selection_config();
    const auto records = run_experiment(plan);
    const auto num = [](double v) { return csv::format_double(v); };

    csv::Table reps, recs, decisions, ratios;
    reps.header = {"rep", "seed", "status", "error"};
    recs.header = {"rep", "seed", "h", "p_s", "p_ls", "N_ls", "mspe2_s", "mspe2_ls", "mspe3_s", "mspe3_ls"};
    for (const auto& r : records) {
        reps.rows.push_back({std::to_string(r.index), std::to_string(r.seed), r.ok ? "ok" : "failed", r.error});
        for (const auto& x : r.horizons)
            recs.rows.push_back({std::to_string(r.index), std::to_string(r.seed), std::to_string(x.h),
                                 std::to_string(x.p_s), std::to_string(x.p_ls), std::to_string(x.N_ls),
                                 num(x.mspe2_s), num(x.mspe2_ls), num(x.mspe3_s), num(x.mspe3_ls)});
    }
    std::vector<int> horizons(static_cast<std::size_t>(plan.max_horizon));
    for (int h = 1; h <= plan.max_horizon; ++h)
        horizons[static_cast<std::size_t>(h - 1)] = h;
    decisions.header = {"model", "n", "delta", "h", "runs", "same", "ls_ls", "ls_s", "s_ls", "s_s", "ls_chosen"};
    if (!records.empty())
        for (const auto& c : same_decision_table(records, plan.deltas, horizons))
            decisions.rows.push_back({plan.model, std::to_string(plan.n), num(c.delta), std::to_string(c.h),
                                      std::to_string(c.runs), num(c.same), num(c.ls_ls), num(c.ls_s), num(c.s_ls),
                                      num(c.s_s), num(c.ls_chosen)});
    ratios.header = {"model", "n", "h", "runs", "mean2_s", "mean2_ls", "ratio2", "mean3_s", "mean3_ls", "ratio3"};
    for (const auto& p : ratio_curves(records))
        ratios.rows.push_back({plan.model, std::to_string(plan.n), std::to_string(p.h), std::to_string(p.runs),
                               num(p.mean2_s), num(p.mean2_ls), num(p.ratio2), num(p.mean3_s), num(p.mean3_ls),
                               num(p.ratio3)});

    const fs::path dir = prepare_dir(common.out_dir);
    write_table(dir, "replications", reps, common.format);
    write_table(dir, "records", recs, common.format);
    write_table(dir, "decisions", decisions, common.format);
    write_table(dir, "ratios", ratios, common.format);
    write_manifest(dir, {{"command", "experiment"},
                         {"argv", argv},
                         {"config",
                          {{"model", plan.model},
                           {"n", plan.n},
                           {"reps", plan.reps},
                           {"m", config.m},
                           {"p_max", config.p_max},
                           {"windows", config.windows},
                           {"max_horizon", plan.max_horizon},
                           {"deltas", plan.deltas}}},
                         {"seed", plan.seed},
                         {"replication_seeds", "splitmix64(seed, replication index)"}});
    const long failed = std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.ok; });
    out << records.size() << " replications (" << failed << " failed) written to " << dir.string() << '\n';
    return 0;
}

void report_error(std::ostream& err, std::string_view kind, const std::string& message, int code)
{
    err << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Per-horizon choice between stationary and locally stationary AR forecasters"};
    app.require_subcommand(1);

    Common common;
    const char* env_dir = std::getenv("TVSELECT_OUTPUT_DIR");
    common.out_dir = env_dir && *env_dir ? env_dir : "tvselect_out";
    app.add_option("--threads", common.threads, "maximum worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", common.out_dir, "output directory (default $TVSELECT_OUTPUT_DIR or ./tvselect_out)");
        sub->add_option("--format", common.format, "table format")->check(CLI::IsMember({"csv", "json"}));
    };

    std::string sim_model;
    long sim_n = 0;
    std::uint64_t sim_seed = 1;
    auto* sim = app.add_subcommand("simulate", "simulate a catalog model");
    sim->add_option("--model", sim_model, "catalog label, e.g. periodic1")->required();
    sim->add_option("--n", sim_n, "number of observations")->required();
    sim->add_option("--seed", sim_seed, "random seed");
    add_common(sim);

    SelectFlags sel;
    auto* select = app.add_subcommand("select", "run the selection procedure on a single-column CSV");
    select->add_option("--input", sel.input, "input CSV")->required();
    select->add_option("--m", sel.m, "segment length m (default floor(n^0.85/4))");
    select->add_option("--p-max", sel.p_max, "largest AR order p_max (default 7)");
    select->add_option("--max-horizon", sel.max_horizon, "largest horizon H (default 10)");
    select->add_option("--delta", sel.delta, "decision margin delta >= 0 (default 0)");
    select->add_flag("--no-demean", sel.no_demean, "do not subtract the sample mean");
    select->add_flag("--no-holdout", sel.no_holdout, "use every observation for training and validation");
    sel.windows.add_to(select);
    add_common(select);

    TheoryFlags th;
    auto* theory_cmd = app.add_subcommand("theory", "population MSPE surface, f(delta) and D bounds");
    theory_cmd->set_help_flag("--help", "print this help message and exit");
    theory_cmd->add_option("--model", th.model, "catalog label")->required();
    theory_cmd->add_option("--n", th.n, "sample size n = T + m");
    theory_cmd->add_option("--m", th.m, "segment length m");
    theory_cmd->add_option("--p-max", th.p_max, "largest AR order p_max");
    theory_cmd->add_option("--h", th.horizons, "horizons h")->expected(1, -1);
    theory_cmd->add_option("--delta", th.deltas, "delta values")->expected(1, -1);
    theory_cmd->add_option("--nodes", th.nodes, "quadrature nodes per unit length");
    theory_cmd->add_option("--derivative-ratio", th.derivative_ratio, "M'_f / m_f for the window condition");
    th.windows.add_to(theory_cmd);
    add_common(theory_cmd);

    ExperimentFlags ex;
    auto* experiment = app.add_subcommand("experiment", "Monte Carlo replications of the procedure");
    experiment->add_option("--model", ex.plan.model, "catalog label")->required();
    experiment->add_option("--n", ex.plan.n, "sample size n = T + m")->required();
    experiment->add_option("--reps", ex.plan.reps, "replications R");
    experiment->add_option("--seed", ex.plan.seed, "base seed");
    experiment->add_option("--delta", ex.plan.deltas, "delta values")->expected(1, -1);
    experiment->add_option("--max-horizon", ex.plan.max_horizon, "largest horizon H");
    experiment->add_option("--m", ex.m, "segment length m");
    experiment->add_option("--p-max", ex.p_max, "largest AR order p_max");
    ex.windows.add_to(experiment);
    add_common(experiment);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        report_error(err, to_string(ErrorKind::InvalidArgument), e.what(), exit_code(ErrorKind::InvalidArgument));
        return exit_code(ErrorKind::InvalidArgument);
    }

    if (common.threads > 0)
        omp_set_num_threads(common.threads);
    omp_set_max_active_levels(1);

    try {
        if (*sim)
            return cmd_simulate(sim_model, sim_n, sim_seed, common, args, out);
        if (*select)
            return cmd_select(sel, common, args, out);
        if (*theory_cmd)
            return cmd_theory(th, common, args, out);
        return cmd_experiment(ex, common, args, out);
    } catch (const Error& e) {
        report_error(err, to_string(e.kind()), e.what(), exit_code(e.kind()));
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        report_error(err, "io", e.what(), 2);
        return 2;
    }
}

} // namespace tvs::cli
