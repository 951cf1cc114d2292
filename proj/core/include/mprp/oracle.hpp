#pragma once

#include <vector>

#include "mprp/model.hpp"

namespace mprp {

/// Size ceilings for the exact methods. Single-vehicle search is a DP over
/// (visited-subset, last-site) states; the multi-vehicle optimum adds a
/// partition enumeration on top, which caps it earlier.
struct OracleLimits {
    int max_sites_single_vehicle = 14;
    int max_sites_multi_vehicle = 9;
};

struct RouteResult {
    double profit = 0.0;
    std::vector<int> route;  // site ids in visit order; possibly empty
};

/// Exact maximum profit over all ordered sub-subsets of `allowed_ids`
/// servable by one vehicle under windows (waiting permitted) and capacity.
///
/// States are keyed by (visited subset, last site) and hold the Pareto
/// frontier of (completion clock, accumulated travel) pairs. Earliest clock
/// alone is not a safe dominance key: waiting decouples clock from travel,
/// and profit depends on travel, so a later-but-shorter state can win.
/// Keeping the two-dimensional frontier preserves exactness; the unit suite
/// checks this against full permutation enumeration, including a crafted
/// counterexample where scalar dominance fails.
///
/// Throws LimitError when |allowed_ids| exceeds the single-vehicle limit.
RouteResult best_single_route(const Instance& instance,
                              const std::vector<int>& allowed_ids,
                              const OracleLimits& limits = {},
                              const ProfitConfig& config = {});

struct OptResult {
    double profit = 0.0;
    std::vector<std::vector<int>> routes;      // one per fleet vehicle
    std::vector<double> per_vehicle_profit;    // same indexing
};

/// Exact optimum over all ways to partition site subsets among
/// min(fleet_size, n) vehicles, each vehicle routed by best_single_route;
/// leaving sites unassigned is allowed. Dominates the profit of every
/// feasible solution on the instance. Throws LimitError when the instance
/// exceeds the multi-vehicle limit.
OptResult brute_force_opt(const Instance& instance,
                          const OracleLimits& limits = {},
                          const ProfitConfig& config = {});

enum class GreedyRule { max_score, nearest_feasible };

/// Deterministic construction baseline. Per vehicle, repeatedly appends the
/// best unassigned site under the rule (max_score: highest score with the
/// repaired timing variant; nearest_feasible: closest window- and
/// capacity-feasible site), ties to the lowest site id, advancing when no
/// candidate remains. Always feasible.
Solution greedy_construct(const Instance& instance, GreedyRule rule,
                          const ProfitConfig& config = {});

}  // namespace mprp
