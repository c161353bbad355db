#pragma once

#include "tvs/selection.hpp"
#include "tvs/tvar.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tvs {

struct ExperimentPlan {
    std::string model;
    long n = 1000; ///< simulated length T + m
    long reps = 500;
    std::uint64_t seed = 1;
    std::vector<double> deltas{0.0, 0.01, 0.05, 0.1, 0.15, 0.2, 0.4, 0.6};
    int max_horizon = 10;
    std::optional<long> m;
    std::optional<int> p_max;
    std::optional<std::vector<long>> windows;
    int threads = 0; ///< 0 leaves the OpenMP default

    /// Selection settings after applying overrides to the protocol defaults.
    SelectionConfig selection_config() const;
    void validate() const;
};

/// What one replication keeps for one horizon.
struct HorizonRecord {
    int h = 1;
    int p_s = 0;
    int p_ls = 0;
    long N_ls = 0;
    double mspe2_s = 0.0;
    double mspe2_ls = 0.0;
    double mspe3_s = 0.0;
    double mspe3_ls = 0.0;
};

struct ReplicationRecord {
    long index = 0;
    std::uint64_t seed = 0;
    bool ok = true;
    std::string error; ///< error kind and message when !ok
    std::vector<HorizonRecord> horizons;
};

/// Runs every replication: simulate n points, select on the first n - m, score on the last m.
/// Replication r uses seed mix_seed(plan.seed, r); records do not depend on the thread count.
std::vector<ReplicationRecord> run_experiment(const ExperimentPlan& plan);

ReplicationRecord run_replication(const ExperimentPlan& plan, const TvarSpec& spec, const SelectionConfig& config,
                                  long index);

struct DecisionCell {
    double delta = 0.0;
    int h = 1;
    long runs = 0;
    double same = 0.0;    ///< rule agrees on validation and test
    double ls_ls = 0.0;   ///< ls by validation, ls by test
    double ls_s = 0.0;    ///< ls by validation, s by test
    double s_ls = 0.0;
    double s_s = 0.0;
    double ls_chosen = 0.0; ///< ls by validation
};

/// Proportions over successful records for every (delta, h) pair; empty for no records.
std::vector<DecisionCell> same_decision_table(const std::vector<ReplicationRecord>& records,
                                              const std::vector<double>& deltas, const std::vector<int>& horizons);

struct RatioPoint {
    int h = 1;
    long runs = 0;
    double mean2_s = 0.0, mean2_ls = 0.0, ratio2 = 0.0;
    double mean3_s = 0.0, mean3_ls = 0.0, ratio3 = 0.0;
};

/// Ratio of mean stationary MSPE to mean localised MSPE per horizon and segment.
/// Records with a non-finite MSPE at a horizon are left out of that horizon.
std::vector<RatioPoint> ratio_curves(const std::vector<ReplicationRecord>& records);

} // namespace tvs
