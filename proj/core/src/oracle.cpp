#include "mprp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "mprp/solver.hpp"

namespace mprp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct ParetoState {
    double clock = 0.0;   // service start time at the last site
    double travel = 0.0;  // accumulated travel from the depot, path order
    int prev_site = -1;   // local index of the predecessor, -1 for depot
    int prev_state = -1;  // index into the predecessor's state list
};

// Insert unless dominated; evict states the candidate dominates. Equal pairs
// count as dominated, so duplicates collapse.
void pareto_insert(std::vector<ParetoState>& states, const ParetoState& cand) {
    for (const ParetoState& s : states)
        if (s.clock <= cand.clock && s.travel <= cand.travel) return;
    std::erase_if(states, [&](const ParetoState& s) {
        return cand.clock <= s.clock && cand.travel <= s.travel;
    });
    states.push_back(cand);
}

// Subset DP shared by the single- and multi-vehicle oracles. Local indices
// 0..k-1 address `locals`; masks range over subsets of those indices.
struct SubsetDp {
    const Instance& instance;
    std::vector<const Site*> locals;
    int k = 0;
    std::vector<double> dist;        // (k+1)^2, index k = depot
    std::vector<double> mask_q;      // total quantity per mask
    std::vector<std::vector<ParetoState>> dp;  // dp[mask * k + j]
    bool charge_return = true;

    SubsetDp(const Instance& inst, const std::vector<int>& allowed_ids,
             bool charge_return_leg)
        : instance(inst), charge_return(charge_return_leg) {
        const std::vector<int> index = instance.id_to_index();
        for (const int id : allowed_ids) {
            if (id < 0 || id >= instance.site_count() || index[id] < 0)
                throw DataError("oracle: unknown site id " + std::to_string(id));
            locals.push_back(&instance.sites[index[id]]);
        }
        k = static_cast<int>(locals.size());

        dist.assign((k + 1) * (k + 1), 0.0);
        auto coord = [&](int i) {
            return i == k ? std::pair{instance.depot_x, instance.depot_y}
                          : std::pair{locals[i]->x, locals[i]->y};
        };
        for (int a = 0; a <= k; ++a)
            for (int b = 0; b <= k; ++b) {
                auto [ax, ay] = coord(a);
                auto [bx, by] = coord(b);
                dist[a * (k + 1) + b] = distance(ax, ay, bx, by);
            }

        const std::size_t masks = std::size_t(1) << k;
        mask_q.assign(masks, 0.0);
        for (std::size_t mask = 1; mask < masks; ++mask) {
            const int low = std::countr_zero(mask);
            mask_q[mask] = mask_q[mask & (mask - 1)] + locals[low]->quantity;
        }

        dp.assign(masks * std::max(k, 1), {});
        run();
    }

    double d(int a, int b) const { return dist[a * (k + 1) + b]; }

    void run() {
        if (k == 0) return;
        const std::size_t masks = std::size_t(1) << k;
        for (int j = 0; j < k; ++j) {
            const Site& s = *locals[j];
            if (s.quantity > instance.capacity + kTol) continue;
            const double arrival = arrival_time(0.0, d(k, j), s.window_start);
            if (arrival > s.window_end + kTol) continue;
            pareto_insert(dp[(std::size_t(1) << j) * k + j],
                          {arrival, d(k, j), -1, -1});
        }
        for (std::size_t mask = 1; mask < masks; ++mask) {
            for (int j = 0; j < k; ++j) {
                if (!(mask & (std::size_t(1) << j))) continue;
                const auto& states = dp[mask * k + j];
                if (states.empty()) continue;
                for (int nxt = 0; nxt < k; ++nxt) {
                    if (mask & (std::size_t(1) << nxt)) continue;
                    const std::size_t grown = mask | (std::size_t(1) << nxt);
                    const Site& s = *locals[nxt];
                    if (mask_q[grown] > instance.capacity + kTol) continue;
                    auto& out = dp[grown * k + nxt];
                    for (int si = 0; si < static_cast<int>(states.size());
                         ++si) {
                        const ParetoState& st = states[si];
                        const double arrival = arrival_time(
                            st.clock, d(j, nxt), s.window_start);
                        if (arrival > s.window_end + kTol) continue;
                        pareto_insert(
                            out, {arrival, st.travel + d(j, nxt), j, si});
                    }
                }
            }
        }
    }

    // Best profit visiting exactly `mask`, ending anywhere; -inf if no
    // feasible order exists.
    double exact_profit(std::size_t mask, int* best_j = nullptr,
                        int* best_state = nullptr) const {
        double best = kNegInf;
        for (int j = 0; j < k; ++j) {
            if (!(mask & (std::size_t(1) << j))) continue;
            const auto& states = dp[mask * k + j];
            for (int si = 0; si < static_cast<int>(states.size()); ++si) {
                const double ret = charge_return ? d(j, k) : 0.0;
                const double profit = mask_q[mask] - states[si].travel - ret;
                if (profit > best) {
                    best = profit;
                    if (best_j) *best_j = j;
                    if (best_state) *best_state = si;
                }
            }
        }
        return best;
    }

    std::vector<int> reconstruct(std::size_t mask, int j, int state) const {
        std::vector<int> route;
        while (j >= 0) {
            route.push_back(locals[j]->id);
            const ParetoState& st = dp[mask * k + j][state];
            mask &= ~(std::size_t(1) << j);
            const int pj = st.prev_site;
            state = st.prev_state;
            j = pj;
        }
        std::reverse(route.begin(), route.end());
        return route;
    }
};

// Best route over sub-subsets of each mask: f[mask] = max(0, exact[mask],
// max_j f[mask \ j]). Also records how to rebuild the winner.
struct BestOfMask {
    std::vector<double> f;
    std::vector<int> kind;  // -1 empty route, -2 exact visit, j >= 0 drop j

    BestOfMask(const SubsetDp& dp) {
        const std::size_t masks = std::size_t(1) << dp.k;
        f.assign(masks, 0.0);
        kind.assign(masks, -1);
        for (std::size_t mask = 1; mask < masks; ++mask) {
            double best = 0.0;
            int how = -1;
            const double exact = dp.exact_profit(mask);
            if (exact > best) {
                best = exact;
                how = -2;
            }
            for (int j = 0; j < dp.k; ++j) {
                if (!(mask & (std::size_t(1) << j))) continue;
                const double dropped = f[mask & ~(std::size_t(1) << j)];
                if (dropped > best) {
                    best = dropped;
                    how = j;
                }
            }
            f[mask] = best;
            kind[mask] = how;
        }
    }

    std::vector<int> route(const SubsetDp& dp, std::size_t mask) const {
        while (mask != 0 && kind[mask] >= 0)
            mask &= ~(std::size_t(1) << kind[mask]);
        if (mask == 0 || kind[mask] == -1) return {};  // empty route wins
        int j = -1, state = -1;
        dp.exact_profit(mask, &j, &state);
        return dp.reconstruct(mask, j, state);
    }
};

}  // namespace

RouteResult best_single_route(const Instance& instance,
                              const std::vector<int>& allowed_ids,
                              const OracleLimits& limits,
                              const ProfitConfig& config) {
    if (static_cast<int>(allowed_ids.size()) > limits.max_sites_single_vehicle)
        throw LimitError("best_single_route: " +
                         std::to_string(allowed_ids.size()) +
                         " sites exceed the single-vehicle limit of " +
                         std::to_string(limits.max_sites_single_vehicle));
    instance.validate();

    SubsetDp dp(instance, allowed_ids, config.charge_return_leg);
    BestOfMask best(dp);
    const std::size_t full = (std::size_t(1) << dp.k) - 1;

    RouteResult result;
    result.route = best.route(dp, full);
    // Recompute through the shared evaluator so the reported profit is
    // bit-identical to what any consumer would recompute for this route.
    result.profit = evaluate_profit(instance, {result.route}, config);
    return result;
}

OptResult brute_force_opt(const Instance& instance, const OracleLimits& limits,
                          const ProfitConfig& config) {
    const int n = instance.site_count();
    if (n > limits.max_sites_multi_vehicle)
        throw LimitError("brute_force_opt: " + std::to_string(n) +
                         " sites exceed the multi-vehicle limit of " +
                         std::to_string(limits.max_sites_multi_vehicle));
    instance.validate();

    OptResult result;
    result.routes.assign(instance.fleet_size, {});
    result.per_vehicle_profit.assign(instance.fleet_size, 0.0);
    if (n == 0) return result;

    std::vector<int> all_ids(n);
    {
        int j = 0;
        for (int id = 0; id < n; ++id) all_ids[j++] = id;
    }
    SubsetDp dp(instance, all_ids, config.charge_return_leg);
    BestOfMask best(dp);

    const int vehicles = std::min(instance.fleet_size, n);
    const std::size_t masks = std::size_t(1) << n;

    // level[t][mask]: best profit serving sites only from `mask` with t
    // vehicles. Submasks are enumerated in a fixed order, strict improvement
    // only, so ties resolve canonically.
    std::vector<std::vector<double>> level(
        vehicles + 1, std::vector<double>(masks, 0.0));
    std::vector<std::vector<std::uint32_t>> choice(
        vehicles + 1, std::vector<std::uint32_t>(masks, 0));
    for (int t = 1; t <= vehicles; ++t) {
        for (std::size_t mask = 0; mask < masks; ++mask) {
            double bestp = kNegInf;
            std::uint32_t bestsub = 0;
            std::size_t sub = mask;
            for (;;) {
                const double p = level[t - 1][mask & ~sub] + best.f[sub];
                if (p > bestp) {
                    bestp = p;
                    bestsub = static_cast<std::uint32_t>(sub);
                }
                if (sub == 0) break;
                sub = (sub - 1) & mask;
            }
            level[t][mask] = bestp;
            choice[t][mask] = bestsub;
        }
    }

    std::size_t mask = masks - 1;
    for (int t = vehicles; t >= 1; --t) {
        const std::size_t sub = choice[t][mask];
        result.routes[t - 1] = best.route(dp, sub);
        mask &= ~sub;
    }
    for (int k = 0; k < instance.fleet_size; ++k)
        result.per_vehicle_profit[k] =
            evaluate_profit(instance, {result.routes[k]}, config);
    result.profit = evaluate_profit(instance, result.routes, config);
    return result;
}

Solution greedy_construct(const Instance& instance, GreedyRule rule,
                          const ProfitConfig& config) {
    instance.validate();
    const int n = instance.site_count();
    const std::vector<int> index = instance.id_to_index();

    SolverConfig score_config;  // repaired timing, clamped, defaults
    std::vector<bool> assigned(n, false);
    std::vector<std::vector<int>> routes(instance.fleet_size);

    for (int k = 0; k < instance.fleet_size; ++k) {
        VehicleState state = VehicleState::at_depot(instance, k);
        for (;;) {
            int best_id = -1;
            double best_key = 0.0;
            for (int id = 0; id < n; ++id) {  // ascending id breaks ties
                if (assigned[id]) continue;
                const Site& site = instance.sites[index[id]];
                if (rule == GreedyRule::max_score) {
                    const double sigma =
                        score(site, state, instance, score_config).score;
                    if (sigma > best_key) {
                        best_key = sigma;
                        best_id = id;
                    }
                } else {
                    const double d =
                        distance(state.last_x, state.last_y, site.x, site.y);
                    const double arrival =
                        arrival_time(state.clock, d, site.window_start);
                    if (arrival > site.window_end + kTol) continue;
                    if (state.load + site.quantity >
                        instance.capacity + kTol)
                        continue;
                    if (best_id < 0 || d < best_key) {
                        best_key = d;
                        best_id = id;
                    }
                }
            }
            if (best_id < 0) break;
            const Site& site = instance.sites[index[best_id]];
            state.clock = arrival_time(
                state.clock,
                distance(state.last_x, state.last_y, site.x, site.y),
                site.window_start);
            state.load += site.quantity;
            state.last_x = site.x;
            state.last_y = site.y;
            routes[k].push_back(best_id);
            assigned[best_id] = true;
        }
    }
    return make_solution(instance, std::move(routes), config);
}

}  // namespace mprp
