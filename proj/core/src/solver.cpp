#include "mprp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mprp {

double profit_factor(const Site& site, const VehicleState& state,
                     const Instance& instance) {
    const double d = distance(state.last_x, state.last_y, site.x, site.y);
    return (site.quantity - d) / instance.capacity;
}

double storage_factor(const Site& site, const VehicleState& state,
                      const Instance& instance) {
    const double margin =
        (instance.capacity - site.quantity - state.load) / instance.capacity;
    return std::max(0.0, margin);
}

double timing_factor(const Site& site, const VehicleState& state,
                     TimingVariant variant) {
    const double arrival =
        state.clock + distance(state.last_x, state.last_y, site.x, site.y);
    const double s = site.window_start;
    const double e = site.window_end;
    if (variant == TimingVariant::repaired) {
        if (arrival <= s) return 1.0;
        if (arrival > e) return 0.0;
        return (e - arrival) / (e - s);  // s < arrival <= e, so e > s here
    }
    // literal: max(0, min(1, (e - a) / (s - a))), with the a == s
    // denominator-zero case defined as 1 and arrivals past the window masked
    // to 0 (the raw formula would reward them).
    if (arrival > e) return 0.0;
    const double den = s - arrival;
    if (den == 0.0) return 1.0;
    return std::max(0.0, std::min(1.0, (e - arrival) / den));
}

ScoreBreakdown score(const Site& site, const VehicleState& state,
                     const Instance& instance, const SolverConfig& config) {
    ScoreBreakdown b;
    b.profit_factor = profit_factor(site, state, instance);
    b.storage_factor = storage_factor(site, state, instance);
    b.timing_factor = timing_factor(site, state, config.timing_variant);
    b.score = b.profit_factor * b.storage_factor * b.timing_factor;
    if (config.clamp_negative_profit_factor && b.score < 0.0) b.score = 0.0;
    if (b.score == 0.0) b.score = 0.0;  // normalize -0
    return b;
}

std::vector<double> selection_probabilities(
    const std::vector<int>& unassigned_ids, const VehicleState& state,
    const Instance& instance, const SolverConfig& config,
    std::optional<double> frozen_denominator) {
    const std::vector<int> index = instance.id_to_index();
    std::vector<double> scores(unassigned_ids.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < unassigned_ids.size(); ++i) {
        const int id = unassigned_ids[i];
        if (id < 0 || id >= instance.site_count() || index[id] < 0)
            throw DataError("selection_probabilities: unknown site id " +
                            std::to_string(id));
        scores[i] =
            score(instance.sites[index[id]], state, instance, config).score;
        total += scores[i];
    }
    if (total <= 0.0 && !frozen_denominator)
        return std::vector<double>(unassigned_ids.size(), 0.0);

    const double denom =
        config.frozen_denominator && frozen_denominator ? *frozen_denominator
                                                        : total;
    std::vector<double> probs(unassigned_ids.size(), 0.0);
    if (denom <= 0.0) return probs;
    for (std::size_t i = 0; i < scores.size(); ++i)
        probs[i] = std::clamp(scores[i] / denom, 0.0, 1.0);
    return probs;
}

std::vector<int> build_candidate_set(const std::vector<int>& unassigned_ids,
                                     const std::vector<double>& probabilities,
                                     SplitMix64& rng) {
    std::vector<int> candidates;
    for (std::size_t i = 0; i < unassigned_ids.size(); ++i) {
        const double p = probabilities[i];
        if (p <= 0.0) continue;  // zero-score sites never consume the stream
        if (rng.next_double() < p) candidates.push_back(unassigned_ids[i]);
    }
    return candidates;
}

void assign_step(const std::vector<int>& candidates, VehicleState& state,
                 const Instance& instance, SplitMix64& rng) {
    if (candidates.empty())
        throw std::invalid_argument("assign_step: empty candidate set");
    const std::vector<int> index = instance.id_to_index();
    const int id = candidates[rng.bounded(candidates.size())];
    if (id < 0 || id >= instance.site_count() || index[id] < 0)
        throw DataError("assign_step: unknown site id " + std::to_string(id));
    const Site& site = instance.sites[index[id]];
    const double travel =
        distance(state.last_x, state.last_y, site.x, site.y);
    state.clock = arrival_time(state.clock, travel, site.window_start);
    state.load += site.quantity;
    state.visited.push_back(id);
    state.last_x = site.x;
    state.last_y = site.y;
}

namespace {

// Hot-path scoring against a flat site array; identical arithmetic to the
// public score() but without per-call id lookups.
struct ScoreKernel {
    const Instance& instance;
    const SolverConfig& config;

    double operator()(const Site& site, const VehicleState& state) const {
        const double d =
            distance(state.last_x, state.last_y, site.x, site.y);
        const double p = (site.quantity - d) / instance.capacity;
        const double s = std::max(
            0.0, (instance.capacity - site.quantity - state.load) /
                     instance.capacity);
        double t;
        const double arrival = state.clock + d;
        const double ws = site.window_start;
        const double we = site.window_end;
        if (config.timing_variant == TimingVariant::repaired) {
            t = arrival <= ws  ? 1.0
                : arrival > we ? 0.0
                               : (we - arrival) / (we - ws);
        } else {
            if (arrival > we) {
                t = 0.0;
            } else {
                const double den = ws - arrival;
                t = den == 0.0
                        ? 1.0
                        : std::max(0.0, std::min(1.0, (we - arrival) / den));
            }
        }
        double sigma = p * s * t;
        if (config.clamp_negative_profit_factor && sigma < 0.0) sigma = 0.0;
        return sigma == 0.0 ? 0.0 : sigma;
    }
};

}  // namespace

Solution solve(const Instance& instance, std::uint64_t seed,
               const SolverConfig& config, SolveStats* stats) {
    instance.validate();
    const int n = instance.site_count();
    const int m = instance.fleet_size;
    const std::size_t retry_budget =
        config.max_empty_retries.value_or(static_cast<std::size_t>(n));

    Solution solution;
    solution.routes.assign(m, {});
    solution.arrival_times.assign(m, {});
    solution.seed = seed;

    // Unassigned sites tracked as indices into instance.sites, kept in
    // ascending site-id order so the RNG stream layout is canonical.
    std::vector<int> order(n);
    {
        const std::vector<int> index = instance.id_to_index();
        for (int id = 0, j = 0; id < n; ++id) order[j++] = index[id];
    }
    std::vector<int> unassigned = order;

    SplitMix64 rng(seed);
    const ScoreKernel kernel{instance, config};
    std::vector<double> scores;
    std::vector<int> candidates;

    for (int k = 0; k < m && !unassigned.empty(); ++k) {
        VehicleState state = VehicleState::at_depot(instance, k);
        std::size_t retries_left = retry_budget;
        double frozen_denom = 0.0;
        bool frozen_ready = false;

        while (!unassigned.empty()) {
            scores.resize(unassigned.size());
            double total = 0.0;
            for (std::size_t i = 0; i < unassigned.size(); ++i) {
                scores[i] = kernel(instance.sites[unassigned[i]], state);
                total += scores[i];
            }
            if (total <= 0.0) {
                if (stats) ++stats->zero_advances;
                break;  // nothing selectable for this vehicle, ever
            }
            if (config.frozen_denominator && !frozen_ready) {
                frozen_denom = total;  // route-start accounting, reused below
                frozen_ready = true;
            }
            const double denom =
                config.frozen_denominator ? frozen_denom : total;

            if (stats) {
                ++stats->iterations;
                if (!config.frozen_denominator) {
                    double sum = 0.0;
                    for (double sc : scores) sum += sc / denom;
                    stats->max_prob_sum_error =
                        std::max(stats->max_prob_sum_error,
                                 std::abs(sum - 1.0));
                    ++stats->prob_sum_checks;
                }
            }

            candidates.clear();
            for (std::size_t i = 0; i < unassigned.size(); ++i) {
                const double p = std::clamp(scores[i] / denom, 0.0, 1.0);
                if (p <= 0.0) continue;  // zero scores never consume the stream
                if (rng.next_double() < p) {
                    candidates.push_back(static_cast<int>(i));
                    if (stats && scores[i] <= 0.0)
                        ++stats->zero_score_candidates;
                }
            }

            if (candidates.empty()) {
                if (stats) ++stats->empty_draws;
                if (retries_left == 0) {
                    if (stats) ++stats->retry_advances;
                    break;
                }
                --retries_left;
                continue;
            }

            const std::size_t pick = rng.bounded(candidates.size());
            const int site_index = unassigned[candidates[pick]];
            const Site& site = instance.sites[site_index];
            const double travel =
                distance(state.last_x, state.last_y, site.x, site.y);
            state.clock = arrival_time(state.clock, travel, site.window_start);
            state.load += site.quantity;
            state.visited.push_back(site.id);
            state.last_x = site.x;
            state.last_y = site.y;
            solution.arrival_times[k].push_back(state.clock);
            unassigned.erase(unassigned.begin() + candidates[pick]);
            retries_left = retry_budget;
            if (stats) ++stats->assignments;
        }
        solution.routes[k] = std::move(state.visited);
    }

    solution.profit = evaluate_profit(
        instance, solution.routes,
        {.charge_return_leg = config.charge_return_leg});
    return solution;
}

Solution solve_best_of(const Instance& instance, std::uint64_t base_seed,
                       std::size_t restarts, const SolverConfig& config) {
    if (restarts < 1)
        throw DataError("solve_best_of: restarts must be >= 1");
    Solution best = solve(instance, base_seed, config);
    for (std::size_t r = 1; r < restarts; ++r) {
        Solution candidate = solve(instance, derive_seed(base_seed, r), config);
        if (candidate.profit > best.profit) best = std::move(candidate);
    }
    return best;
}

}  // namespace mprp
