#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mprp/model.hpp"
#include "mprp/rng.hpp"

namespace mprp {

/// The published scoring formula evaluates to 0 for arrivals strictly inside
/// the window and can be positive for arrivals after it closes. `repaired`
/// (the default) keeps the evident intent -- full weight before the window,
/// linear decay inside it, zero after -- and makes feasibility-by-construction
/// literally true. `literal` evaluates the formula as written, with a hard
/// mask forcing 0 whenever the arrival would miss the window.
enum class TimingVariant { repaired, literal };

struct SolverConfig {
    TimingVariant timing_variant = TimingVariant::repaired;
    /// Clamp negative scores to 0 so selection weights form a distribution.
    bool clamp_negative_profit_factor = true;
    /// Consecutive empty candidate draws tolerated (while positive-score
    /// sites remain) before the vehicle is advanced. Empty means the site
    /// count of the instance.
    std::optional<std::size_t> max_empty_retries;
    bool charge_return_leg = true;
    /// Reuse the selection denominator computed at route start instead of
    /// recomputing it every iteration; probabilities are clamped to [0, 1].
    /// Off by default: the fresh denominator keeps per-iteration weights a
    /// true distribution.
    bool frozen_denominator = false;
};

struct ScoreBreakdown {
    double profit_factor = 0.0;
    double storage_factor = 0.0;  // in [0, 1]
    double timing_factor = 0.0;   // in [0, 1]
    double score = 0.0;           // product, clamped to >= 0 when configured
};

/// (q_i - d(last, i)) / Q. Negative when the leg costs more than the site
/// supplies.
double profit_factor(const Site& site, const VehicleState& state,
                     const Instance& instance);

/// max(0, (Q - q_i - load) / Q): remaining capacity margin after the pickup.
double storage_factor(const Site& site, const VehicleState& state,
                      const Instance& instance);

/// Weight of the arrival candidate clock + d(last, i) against the window;
/// see TimingVariant.
double timing_factor(const Site& site, const VehicleState& state,
                     TimingVariant variant);

/// score = profit * storage * timing. A zero score means the site is never
/// selectable for this vehicle in this state.
ScoreBreakdown score(const Site& site, const VehicleState& state,
                     const Instance& instance, const SolverConfig& config);

/// Selection probabilities over the unassigned sites, proportional to their
/// scores. All-zero scores yield the all-zero map. With a frozen denominator
/// (computed by the caller at route start) each probability is clamped to
/// [0, 1] and the map need not sum to 1.
std::vector<double> selection_probabilities(
    const std::vector<int>& unassigned_ids, const VehicleState& state,
    const Instance& instance, const SolverConfig& config,
    std::optional<double> frozen_denominator = std::nullopt);

/// Independent Bernoulli draw per site; returns the accepted ids (possibly
/// none). Sites are visited in the given order, one uniform per positive
/// probability, so the stream layout is deterministic.
std::vector<int> build_candidate_set(const std::vector<int>& unassigned_ids,
                                     const std::vector<double>& probabilities,
                                     SplitMix64& rng);

/// Picks uniformly among the candidates, appends it to the route and updates
/// load, clock and position. Throws std::invalid_argument on an empty set.
void assign_step(const std::vector<int>& candidates, VehicleState& state,
                 const Instance& instance, SplitMix64& rng);

/// Instrumentation collected by solve() when requested.
struct SolveStats {
    std::uint64_t iterations = 0;      // candidate-draw rounds
    std::uint64_t assignments = 0;
    std::uint64_t empty_draws = 0;     // empty sets despite positive scores
    std::uint64_t retry_advances = 0;  // vehicles advanced on retry exhaustion
    std::uint64_t zero_advances = 0;   // vehicles advanced on all-zero scores
    /// Candidates that entered a set with score 0 (must stay 0 forever).
    std::uint64_t zero_score_candidates = 0;
    /// Fresh-denominator mode: max |sum(probabilities) - 1| over iterations
    /// with at least one positive score.
    double max_prob_sum_error = 0.0;
    std::uint64_t prob_sum_checks = 0;
};

/// One pass of the randomized construction over vehicles 1..m. For the
/// current vehicle: score the unassigned sites, draw a Bernoulli candidate
/// set, assign one candidate uniformly at random, repeat. The vehicle is
/// advanced immediately when every unassigned site has score zero, and after
/// max_empty_retries consecutive empty draws otherwise. The result always
/// passes check_feasible, and its profit equals evaluate_profit under the
/// configured return-leg accounting. Deterministic per (instance, seed,
/// config).
Solution solve(const Instance& instance, std::uint64_t seed,
               const SolverConfig& config = {}, SolveStats* stats = nullptr);

/// Best of `restarts` independent solve() runs. Restart r uses the base seed
/// itself for r = 0 and derive_seed(base_seed, r) for r >= 1, so prefixes
/// nest and best-of-1 is exactly solve(). Ties keep the lowest restart
/// index.
Solution solve_best_of(const Instance& instance, std::uint64_t base_seed,
                       std::size_t restarts, const SolverConfig& config = {});

}  // namespace mprp
