#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mprp/generator.hpp"
#include "mprp/model.hpp"
#include "mprp/oracle.hpp"
#include "mprp/solver.hpp"

namespace mprp {

/// A parameter sweep over seeded Monte Carlo trials.
///
/// Cells are the Cartesian product of the sweep ranges, expanded in
/// alphabetical key order, row-major; an empty sweep is a single cell with
/// the template parameters. Seeds: with ci the cell index and ti the trial
/// index,
///   trial_seed = derive_seed(derive_seed(master_seed, ci), ti)
///   instance   = generate(params with seed = derive_seed(trial_seed, 0))
///   solver     = solve_best_of(instance, derive_seed(trial_seed, 1), restarts)
/// The template's own seed field is ignored. This mixing rule is part of the
/// reproducibility contract.
struct ExperimentPlan {
    GenParams gen_params;
    std::map<std::string, std::vector<double>> sweep;  // n, m, capacity, horizon
    int trials_per_cell = 30;
    int restarts = 1;
    SolverConfig solver_config;
    bool compare_oracle = false;
    std::uint64_t master_seed = 0;
    /// When false, mean_solve_ms is reported as exactly 0 so the whole
    /// report is a deterministic function of the plan.
    bool measure_time = true;
};

struct CellResult {
    int n = 0;
    int m = 0;
    double capacity = 0.0;
    double horizon = 0.0;
    int trials = 0;
    int restarts = 0;
    double mean_profit = 0.0;
    double std_profit = 0.0;  // sample standard deviation
    double ci95 = 0.0;        // 1.96 * std / sqrt(trials)
    double ratio_oracle_mean = 0.0;  // NaN when oracle comparison is off
    double ratio_bound_mean = 0.0;
    double mean_solve_ms = 0.0;
};

struct ExperimentReport {
    std::vector<CellResult> cells;
};

/// min(total supply, fleet_size * capacity): no feasible profit exceeds it.
double profit_upper_bound(const Instance& instance);

/// Runs the plan. Trials are independent and may execute on `threads`
/// workers; results are aggregated by trial index, so the report (timing
/// aside) is identical for every thread count. Throws LimitError before any
/// work when compare_oracle is set and a swept n exceeds the oracle limit.
ExperimentReport run_plan(const ExperimentPlan& plan, int threads = 1);

/// Workload for the runtime probe: n sites on a small disk around the depot,
/// unit quantities, wide-open windows, and capacity floor(sqrt(n)) + 1 so
/// each vehicle's route grows like sqrt(n). Travel and windows never bind;
/// what is measured is the per-iteration score rescan over the unassigned
/// pool.
Instance runtime_workload_instance(int n, int m, std::uint64_t seed);

struct RuntimeProbeParams {
    std::vector<int> n_values{250, 500, 1000, 2000};  // swept at fixed_m
    std::vector<int> m_values{2, 4, 8, 16};           // swept at fixed_n
    int fixed_n = 500;
    int fixed_m = 5;
    int repetitions = 7;  // timed runs per point; one warm-up discarded
    std::uint64_t seed = 0;
    SolverConfig base_config;  // frozen_denominator is overridden per mode
};

struct ProbePoint {
    int size = 0;
    double fresh_ms = 0.0;
    double frozen_ms = 0.0;
};

struct ProbeAxis {
    std::string axis;  // "n" or "m"
    std::vector<ProbePoint> points;
    double fresh_slope = 0.0;
    double frozen_slope = 0.0;
};

struct RuntimeProbeReport {
    ProbeAxis n_axis;
    ProbeAxis m_axis;
    std::string notes;
};

/// Times solve() across both axes and both denominator modes and fits
/// log-log slopes to the median times. Sizes must be ascending with at
/// least 3 points per axis.
RuntimeProbeReport runtime_probe(const RuntimeProbeParams& params = {});

/// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(const std::vector<double>& xs,
                        const std::vector<double>& ys);

}  // namespace mprp
