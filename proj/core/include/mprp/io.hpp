#pragma once

#include <optional>
#include <string>

#include "mprp/experiments.hpp"
#include "mprp/model.hpp"

namespace mprp {

// Canonical JSON codecs. Emission is deterministic (alphabetical keys,
// shortest round-trip decimals), and parse(emit(x)) == x exactly. Parsers
// validate all model invariants and report the first violation with a path
// such as sites[3].window.

std::string emit_instance(const Instance& instance);
Instance parse_instance(const std::string& text);

std::string emit_solution(const Solution& solution);
Solution parse_solution(const std::string& text);

ExperimentPlan parse_plan(const std::string& text);
std::string emit_plan(const ExperimentPlan& plan);

std::string emit_report_json(const ExperimentReport& report);
/// Columns: n, m, capacity, horizon, trials, restarts, mean_profit,
/// std_profit, ci95, ratio_oracle_mean, ratio_bound_mean, mean_solve_ms.
std::string emit_report_csv(const ExperimentReport& report);

std::string emit_probe_json(const RuntimeProbeReport& report);

/// Classic 100-customer VRPTW benchmark text (name, VEHICLE header with
/// fleet count and capacity, CUSTOMER rows id/x/y/demand/ready/due/service;
/// customer 0 is the depot).
struct SolomonConversion {
    Instance instance;
    std::string name;
    int clipped_windows = 0;        // windows cut back to the horizon
    int nonzero_service_times = 0;  // parsed but ignored; recorded for fidelity
};

/// Converts a benchmark file: demand becomes quantity, ready/due the window,
/// coordinates are translated so the depot sits at the origin. The horizon is
/// the maximum due date unless overridden; windows beyond it are clipped and
/// counted. Throws DataError on malformed rows, non-ascending ids, or a
/// missing depot row.
SolomonConversion convert_solomon(
    const std::string& text,
    std::optional<double> horizon_override = std::nullopt);

std::string read_file(const std::string& path);
/// Write via a temp file in the same directory plus rename, so readers never
/// observe a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace mprp
