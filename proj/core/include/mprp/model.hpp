#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mprp/errors.hpp"

namespace mprp {

/// Absolute tolerance for boundary comparisons on times and quantities.
/// Arriving exactly at a window's close, or loading exactly to capacity, is
/// feasible.
inline constexpr double kTol = 1e-9;

/// A pickup location. Coordinates are in distance units; vehicles travel at
/// unit speed, so distances double as travel times. Service at the site may
/// start anywhere in [window_start, window_end]; arriving early means
/// waiting, arriving after window_end is infeasible.
struct Site {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    double window_start = 0.0;
    double window_end = 0.0;
    double quantity = 0.0;
};

/// A problem instance: a depot, n sites, a fleet of `fleet_size` identical
/// vehicles of capacity `capacity`, and a planning horizon `horizon`.
/// Site ids are distinct and lie in [0, n); the order of `sites` is
/// otherwise arbitrary. Immutable after construction.
struct Instance {
    double depot_x = 0.0;
    double depot_y = 0.0;
    int fleet_size = 1;
    double capacity = 1.0;
    double horizon = 1.0;
    std::vector<Site> sites;

    int site_count() const { return static_cast<int>(sites.size()); }

    /// Throws DataError naming the first violated invariant.
    void validate() const;

    /// Position of the site with the given id in `sites`, or -1. O(n) once;
    /// callers in hot paths should build the table a single time.
    std::vector<int> id_to_index() const;
};

/// Mutable per-vehicle construction state: the route built so far, the load,
/// the clock (time at which service at the last visited site started), and
/// the current position. Confined to a single solver run.
struct VehicleState {
    int vehicle_index = 0;
    std::vector<int> visited;
    double load = 0.0;
    double clock = 0.0;
    double last_x = 0.0;
    double last_y = 0.0;

    static VehicleState at_depot(const Instance& instance, int vehicle_index) {
        VehicleState s;
        s.vehicle_index = vehicle_index;
        s.last_x = instance.depot_x;
        s.last_y = instance.depot_y;
        return s;
    }
};

/// One route per vehicle (site ids in visit order), the service start time of
/// every visit, and the realized profit. `seed` is set when a randomized
/// solver produced the solution.
struct Solution {
    std::vector<std::vector<int>> routes;
    std::vector<std::vector<double>> arrival_times;
    double profit = 0.0;
    std::optional<std::uint64_t> seed;
};

enum class ViolationKind {
    window_early,
    window_late,
    capacity,
    duplicate_site,
    unknown_site,
};

std::string to_string(ViolationKind kind);

struct Violation {
    int route = 0;
    int position = 0;  // 0-based index into the route
    ViolationKind kind = ViolationKind::unknown_site;
    int site_id = -1;
};

struct FeasibilityReport {
    bool feasible = true;
    std::vector<Violation> violations;
};

struct ProfitConfig {
    /// Charge the last-site-to-depot leg of each route. On by default; the
    /// off setting reproduces an accounting that sums only q_i - d(prev, i).
    bool charge_return_leg = true;
};

/// Euclidean distance. Symmetric, zero iff the points coincide.
inline double distance(double ax, double ay, double bx, double by) {
    const double dx = ax - bx;
    const double dy = ay - by;
    return std::sqrt(dx * dx + dy * dy);
}

/// Service start time after traveling `travel` from a clock of `clock`:
/// max(clock + travel, window_start). Models waiting until the window opens.
inline double arrival_time(double clock, double travel, double window_start) {
    return std::max(clock + travel, window_start);
}

/// Total quantity collected minus total travel cost. Each route's legs run
/// depot -> first -> ... -> last, plus the return leg when configured. Empty
/// routes contribute nothing. Throws DataError on an unknown site id.
double evaluate_profit(const Instance& instance,
                       const std::vector<std::vector<int>>& routes,
                       const ProfitConfig& config = {});

/// Simulates every route from the depot at clock 0 with earliest arrivals
/// (waiting before a window opens is legal) and records every violation:
/// arrival after window_end, capacity overflow, duplicate visit, unknown id.
FeasibilityReport check_feasible(const Instance& instance,
                                 const std::vector<std::vector<int>>& routes);

/// Full solution audit: route feasibility as in check_feasible, plus the
/// claimed arrival times (each must lie inside its window and be reachable
/// given the previous claimed arrival) and the claimed profit, which must
/// match evaluate_profit under one of the two return-leg accountings.
struct SolutionCheck {
    FeasibilityReport report;
    bool arrivals_consistent = true;
    bool profit_consistent = true;
    double profit_with_return = 0.0;
    double profit_without_return = 0.0;

    bool ok() const {
        return report.feasible && arrivals_consistent && profit_consistent;
    }
};

SolutionCheck check_solution(const Instance& instance, const Solution& solution);

/// Builds a full Solution from bare routes: earliest-arrival schedule per
/// route plus the evaluated profit. Does not check feasibility.
Solution make_solution(const Instance& instance,
                       std::vector<std::vector<int>> routes,
                       const ProfitConfig& config = {});

}  // namespace mprp
