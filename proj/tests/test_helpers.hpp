#pragma once

// Shared fixtures for the unit and acceptance suites, including the
// permutation enumerator used as the independent reference for the exact
// oracle. The enumerator deliberately re-derives feasibility and profit with
// plain loops instead of calling into the oracle under test.

#include <algorithm>
#include <vector>

#include "mprp/generator.hpp"
#include "mprp/model.hpp"
#include "mprp/rng.hpp"

namespace mprp::testing {

inline Site site(int id, double x, double y, double window_start,
                 double window_end, double quantity) {
    return Site{id, x, y, window_start, window_end, quantity};
}

inline Instance make_instance(double capacity, double horizon, int fleet_size,
                              std::vector<Site> sites) {
    Instance instance;
    instance.capacity = capacity;
    instance.horizon = horizon;
    instance.fleet_size = fleet_size;
    instance.sites = std::move(sites);
    return instance;
}

struct EnumeratedBest {
    double profit = 0.0;  // empty route is always available
    std::vector<int> route;
};

/// Exhaustive search over every ordered subset of `ids` for one vehicle.
inline EnumeratedBest enumerate_best_single_route(
    const Instance& instance, std::vector<int> ids,
    const ProfitConfig& config = {}) {
    const std::vector<int> index = instance.id_to_index();
    std::sort(ids.begin(), ids.end());
    const int k = static_cast<int>(ids.size());
    EnumeratedBest best;

    for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
        std::vector<int> subset;
        for (int j = 0; j < k; ++j)
            if (mask & (std::size_t(1) << j)) subset.push_back(ids[j]);
        std::sort(subset.begin(), subset.end());
        do {
            double clock = 0.0;
            double load = 0.0;
            double x = instance.depot_x;
            double y = instance.depot_y;
            double collected = 0.0;
            double travel = 0.0;
            bool feasible = true;
            for (const int id : subset) {
                const Site& s = instance.sites[index[id]];
                const double leg = distance(x, y, s.x, s.y);
                clock = std::max(clock + leg, s.window_start);
                if (clock > s.window_end + kTol) {
                    feasible = false;
                    break;
                }
                load += s.quantity;
                if (load > instance.capacity + kTol) {
                    feasible = false;
                    break;
                }
                travel += leg;
                collected += s.quantity;
                x = s.x;
                y = s.y;
            }
            if (!feasible) continue;
            if (config.charge_return_leg)
                travel += distance(x, y, instance.depot_x, instance.depot_y);
            const double profit = collected - travel;
            if (profit > best.profit) {
                best.profit = profit;
                best.route = subset;
            }
        } while (std::next_permutation(subset.begin(), subset.end()));
    }
    return best;
}

/// Small random instance in the generator's family, sized for oracle work.
inline Instance random_small_instance(std::uint64_t seed, int max_sites = 7) {
    SplitMix64 rng(seed);
    GenParams params;
    params.n = 1 + static_cast<int>(rng.bounded(max_sites));
    params.m = 1 + static_cast<int>(rng.bounded(3));
    params.horizon = 50.0 + 100.0 * rng.next_double();
    params.capacity =
        params.n * params.horizon * (0.5 + rng.next_double());
    params.seed = rng.next_u64();
    return generate(params);
}

}  // namespace mprp::testing
