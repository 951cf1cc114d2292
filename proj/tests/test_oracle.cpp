#include <doctest.h>

#include <cmath>
#include <set>

#include "mprp/generator.hpp"
#include "mprp/oracle.hpp"
#include "mprp/solver.hpp"
#include "test_helpers.hpp"

using namespace mprp;
using mprp::testing::enumerate_best_single_route;
using mprp::testing::make_instance;
using mprp::testing::random_small_instance;
using mprp::testing::site;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("best_single_route basics") {
    SUBCASE("empty allowed set") {
        const auto instance = make_instance(100, 100, 1, {});
        const auto result = best_single_route(instance, {});
        CHECK(result.profit == 0.0);
        CHECK(result.route.empty());
    }
    SUBCASE("one profitable site") {
        const auto instance =
            make_instance(100, 100, 1, {site(0, 3, 4, 0, 100, 20)});
        const auto result = best_single_route(instance, {0});
        CHECK(result.profit == 10.0);
        CHECK(result.route == std::vector<int>{0});
    }
    SUBCASE("an unprofitable site is skipped") {
        const auto instance =
            make_instance(100, 100, 1, {site(0, 30, 0, 0, 100, 1)});
        const auto result = best_single_route(instance, {0});
        CHECK(result.profit == 0.0);
        CHECK(result.route.empty());
    }
    SUBCASE("size limit") {
        GenParams p;
        p.n = 20;
        const Instance instance = generate(p);
        std::vector<int> all;
        for (int id = 0; id < 20; ++id) all.push_back(id);
        CHECK_THROWS_AS(best_single_route(instance, all), LimitError);
    }
}

TEST_CASE("earliest-clock-only dominance would be wrong; the Pareto DP is not") {
    // A sits next to the depot with a near-point window [30, 31]; B, C, D
    // form a far cluster with open windows. The optimum is A->D->C->B
    // (profit 103 - sqrt(229) ~ 87.867), whose terminal state at the full
    // mask ending B is (clock 48.13, travel 18.13). The order A->C->D->B
    // reaches the same state key at (48.03, 19.03): earlier clock, more
    // travel, neither dominates. A DP keeping only the earliest clock per
    // (mask, last) would discard the optimum's state and report 87.858 via
    // A->B->C->D instead.
    const auto instance = make_instance(
        1000, 200, 1,
        {site(0, 1, 0, 30, 31, 30), site(1, -14, 0, 0, 200, 30),
         site(2, -14, -1, 0, 200, 30), site(3, -14, -2, 0, 200, 30)});
    const auto dp = best_single_route(instance, {0, 1, 2, 3});
    const auto reference = enumerate_best_single_route(instance, {0, 1, 2, 3});
    CHECK(dp.profit == reference.profit);
    // A -> D -> C -> B: 120 - (1 + sqrt(229) + 1 + 1 + 14)
    CHECK(dp.profit ==
          doctest::Approx(103.0 - std::sqrt(229.0)).epsilon(1e-12));
    CHECK(dp.route == std::vector<int>{0, 3, 2, 1});
}

TEST_CASE("DP equals exhaustive enumeration on random instances") {
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        const Instance instance =
            random_small_instance(derive_seed(0xD0, trial));
        std::vector<int> all;
        for (int id = 0; id < instance.site_count(); ++id) all.push_back(id);
        const auto dp = best_single_route(instance, all);
        const auto reference = enumerate_best_single_route(instance, all);
        CHECK(dp.profit == reference.profit);

        // Same check without the return leg.
        const ProfitConfig open{.charge_return_leg = false};
        const auto dp_open = best_single_route(instance, all, {}, open);
        const auto ref_open = enumerate_best_single_route(instance, all, open);
        CHECK(dp_open.profit == ref_open.profit);
    }
}

TEST_CASE("brute_force_opt") {
    SUBCASE("zero sites") {
        const auto instance = make_instance(100, 100, 2, {});
        const auto opt = brute_force_opt(instance);
        CHECK(opt.profit == 0.0);
        CHECK(opt.routes.size() == 2);
    }
    SUBCASE("mutually incompatible windows spread across the fleet") {
        // Serving any two of these point windows in one route is impossible.
        const auto instance = make_instance(
            100, 100, 3,
            {site(0, 10, 0, 10, 10, 50), site(1, -10, 0, 10, 10, 50),
             site(2, 0, 10, 10, 10, 50)});
        const auto opt = brute_force_opt(instance);
        CHECK(opt.profit == doctest::Approx(3 * (50.0 - 20.0)));
        std::set<int> covered;
        for (const auto& route : opt.routes) {
            CHECK(route.size() == 1);
            covered.insert(route[0]);
        }
        CHECK(covered == std::set<int>{0, 1, 2});
    }
    SUBCASE("size limit") {
        GenParams p;
        p.n = 12;
        CHECK_THROWS_AS(brute_force_opt(generate(p)), LimitError);
    }
    SUBCASE("single vehicle reduces to best_single_route") {
        const Instance instance = random_small_instance(0xBEEF);
        Instance single = instance;
        single.fleet_size = 1;
        std::vector<int> all;
        for (int id = 0; id < single.site_count(); ++id) all.push_back(id);
        CHECK(brute_force_opt(single).profit ==
              best_single_route(single, all).profit);
    }
}

TEST_CASE("oracle dominates every feasible solution") {
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        const Instance instance =
            random_small_instance(derive_seed(0xE0, trial));
        const auto opt = brute_force_opt(instance);

        CHECK(check_feasible(instance, opt.routes).feasible);

        double supply = 0.0;
        for (const Site& s : instance.sites) supply += s.quantity;
        CHECK(opt.profit <= supply + 1e-6);
        CHECK(opt.profit <=
              instance.fleet_size * instance.capacity + 1e-6);
        for (double per : opt.per_vehicle_profit)
            CHECK(per <= instance.capacity + 1e-6);

        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const Solution sol =
                solve(instance, derive_seed(trial * 1000, seed));
            CHECK(sol.profit <= opt.profit + 1e-6);
        }
        for (const GreedyRule rule :
             {GreedyRule::max_score, GreedyRule::nearest_feasible}) {
            const Solution greedy = greedy_construct(instance, rule);
            CHECK(check_feasible(instance, greedy.routes).feasible);
            CHECK(greedy.profit <= opt.profit + 1e-6);
        }
    }
}

TEST_CASE("greedy baselines") {
    SUBCASE("zero sites") {
        const auto instance = make_instance(100, 100, 2, {});
        const auto sol = greedy_construct(instance, GreedyRule::max_score);
        CHECK(sol.profit == 0.0);
        for (const auto& r : sol.routes) CHECK(r.empty());
    }
    SUBCASE("single feasible profitable site is visited") {
        const auto instance =
            make_instance(100, 100, 1, {site(0, 3, 4, 0, 100, 20)});
        for (const GreedyRule rule :
             {GreedyRule::max_score, GreedyRule::nearest_feasible}) {
            const auto sol = greedy_construct(instance, rule);
            CHECK(sol.routes[0] == std::vector<int>{0});
        }
    }
    SUBCASE("max_score ties break to the lowest id") {
        const auto instance = make_instance(
            100, 100, 1,
            {site(0, 2, 0, 0, 100, 30), site(1, 2, 0, 0, 100, 30)});
        const auto sol = greedy_construct(instance, GreedyRule::max_score);
        REQUIRE(!sol.routes[0].empty());
        CHECK(sol.routes[0][0] == 0);
    }
}

TEST_CASE("oracle limits hold their invariant") {
    const OracleLimits limits;
    CHECK(limits.max_sites_multi_vehicle <= limits.max_sites_single_vehicle);
    CHECK(limits.max_sites_single_vehicle > 0);
}

TEST_SUITE_END();
