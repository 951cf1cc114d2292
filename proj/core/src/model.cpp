#include "mprp/model.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace mprp {

namespace {

bool is_finite(double v) { return std::isfinite(v); }

}  // namespace

void Instance::validate() const {
    if (fleet_size < 1) throw DataError("instance: fleet_size must be >= 1");
    if (!(capacity > 0.0) || !is_finite(capacity))
        throw DataError("instance: capacity must be > 0");
    if (!(horizon > 0.0) || !is_finite(horizon))
        throw DataError("instance: horizon must be > 0");
    if (!is_finite(depot_x) || !is_finite(depot_y))
        throw DataError("instance: depot coordinates must be finite");

    const int n = site_count();
    std::set<int> seen;
    for (int i = 0; i < n; ++i) {
        const Site& s = sites[i];
        const std::string at = "sites[" + std::to_string(i) + "]";
        if (s.id < 0 || s.id >= n)
            throw DataError("instance: " + at + ".id " + std::to_string(s.id) +
                            " outside [0, " + std::to_string(n) + ")");
        if (!seen.insert(s.id).second)
            throw DataError("instance: " + at + ".id " + std::to_string(s.id) +
                            " duplicated");
        if (!is_finite(s.x) || !is_finite(s.y))
            throw DataError("instance: " + at + ".pos must be finite");
        if (!is_finite(s.window_start) || !is_finite(s.window_end))
            throw DataError("instance: " + at + ".window must be finite");
        if (s.window_start < -kTol || s.window_start > s.window_end + kTol ||
            s.window_end > horizon + kTol)
            throw DataError("instance: " + at +
                            ".window violates 0 <= start <= end <= horizon");
        if (s.quantity < -kTol || !is_finite(s.quantity))
            throw DataError("instance: " + at + ".quantity must be >= 0");
    }
}

std::vector<int> Instance::id_to_index() const {
    const int n = site_count();
    std::vector<int> index(n, -1);
    for (int i = 0; i < n; ++i) {
        const int id = sites[i].id;
        if (id >= 0 && id < n) index[id] = i;
    }
    return index;
}

std::string to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::window_early: return "window_early";
        case ViolationKind::window_late: return "window_late";
        case ViolationKind::capacity: return "capacity";
        case ViolationKind::duplicate_site: return "duplicate_site";
        case ViolationKind::unknown_site: return "unknown_site";
    }
    return "unknown";
}

double evaluate_profit(const Instance& instance,
                       const std::vector<std::vector<int>>& routes,
                       const ProfitConfig& config) {
    const std::vector<int> index = instance.id_to_index();
    const int n = instance.site_count();
    double profit = 0.0;
    for (const auto& route : routes) {
        if (route.empty()) continue;
        double x = instance.depot_x;
        double y = instance.depot_y;
        double collected = 0.0;
        double travel = 0.0;
        for (const int id : route) {
            if (id < 0 || id >= n || index[id] < 0)
                throw DataError("evaluate_profit: unknown site id " +
                                std::to_string(id));
            const Site& s = instance.sites[index[id]];
            travel += distance(x, y, s.x, s.y);
            collected += s.quantity;
            x = s.x;
            y = s.y;
        }
        if (config.charge_return_leg)
            travel += distance(x, y, instance.depot_x, instance.depot_y);
        profit += collected - travel;
    }
    return profit;
}

FeasibilityReport check_feasible(const Instance& instance,
                                 const std::vector<std::vector<int>>& routes) {
    const std::vector<int> index = instance.id_to_index();
    const int n = instance.site_count();
    FeasibilityReport report;
    std::vector<bool> assigned(n, false);

    for (int k = 0; k < static_cast<int>(routes.size()); ++k) {
        const auto& route = routes[k];
        double x = instance.depot_x;
        double y = instance.depot_y;
        double clock = 0.0;
        double load = 0.0;
        for (int pos = 0; pos < static_cast<int>(route.size()); ++pos) {
            const int id = route[pos];
            if (id < 0 || id >= n || index[id] < 0) {
                report.violations.push_back(
                    {k, pos, ViolationKind::unknown_site, id});
                continue;
            }
            const Site& s = instance.sites[index[id]];
            if (assigned[id]) {
                report.violations.push_back(
                    {k, pos, ViolationKind::duplicate_site, id});
            }
            assigned[id] = true;
            clock = arrival_time(clock, distance(x, y, s.x, s.y), s.window_start);
            if (clock > s.window_end + kTol)
                report.violations.push_back(
                    {k, pos, ViolationKind::window_late, id});
            load += s.quantity;
            if (load > instance.capacity + kTol)
                report.violations.push_back({k, pos, ViolationKind::capacity, id});
            x = s.x;
            y = s.y;
        }
    }
    report.feasible = report.violations.empty();
    return report;
}

SolutionCheck check_solution(const Instance& instance, const Solution& solution) {
    SolutionCheck check;
    check.report = check_feasible(instance, solution.routes);

    // Claimed arrival times: the schedule must be executable as stated. Each
    // claimed service start must be reachable from the previous one (no claim
    // earlier than travel allows, tolerance 1e-6 for serialization round-off)
    // and must respect the site's window.
    const std::vector<int> index = instance.id_to_index();
    const int n = instance.site_count();
    const double tol = 1e-6;
    if (solution.arrival_times.size() != solution.routes.size()) {
        check.arrivals_consistent = false;
    } else {
        for (std::size_t k = 0; k < solution.routes.size(); ++k) {
            const auto& route = solution.routes[k];
            const auto& times = solution.arrival_times[k];
            if (times.size() != route.size()) {
                check.arrivals_consistent = false;
                continue;
            }
            double x = instance.depot_x;
            double y = instance.depot_y;
            double clock = 0.0;
            for (std::size_t pos = 0; pos < route.size(); ++pos) {
                const int id = route[pos];
                if (id < 0 || id >= n || index[id] < 0) continue;  // reported above
                const Site& s = instance.sites[index[id]];
                const double earliest =
                    arrival_time(clock, distance(x, y, s.x, s.y), s.window_start);
                const double claimed = times[pos];
                if (claimed < earliest - tol)
                    check.report.violations.push_back(
                        {static_cast<int>(k), static_cast<int>(pos),
                         ViolationKind::window_early, id});
                if (claimed > s.window_end + tol)
                    check.report.violations.push_back(
                        {static_cast<int>(k), static_cast<int>(pos),
                         ViolationKind::window_late, id});
                clock = claimed;
                x = s.x;
                y = s.y;
            }
        }
    }
    check.report.feasible = check.report.violations.empty();

    try {
        check.profit_with_return = evaluate_profit(instance, solution.routes,
                                                   {.charge_return_leg = true});
        check.profit_without_return = evaluate_profit(
            instance, solution.routes, {.charge_return_leg = false});
        check.profit_consistent =
            std::abs(solution.profit - check.profit_with_return) <= tol ||
            std::abs(solution.profit - check.profit_without_return) <= tol;
    } catch (const DataError&) {
        check.profit_consistent = false;  // unknown ids already reported
    }
    return check;
}

Solution make_solution(const Instance& instance,
                       std::vector<std::vector<int>> routes,
                       const ProfitConfig& config) {
    const std::vector<int> index = instance.id_to_index();
    const int n = instance.site_count();
    Solution solution;
    solution.arrival_times.reserve(routes.size());
    for (const auto& route : routes) {
        std::vector<double> times;
        times.reserve(route.size());
        double x = instance.depot_x;
        double y = instance.depot_y;
        double clock = 0.0;
        for (const int id : route) {
            if (id < 0 || id >= n || index[id] < 0)
                throw DataError("make_solution: unknown site id " +
                                std::to_string(id));
            const Site& s = instance.sites[index[id]];
            clock = arrival_time(clock, distance(x, y, s.x, s.y), s.window_start);
            times.push_back(clock);
            x = s.x;
            y = s.y;
        }
        solution.arrival_times.push_back(std::move(times));
    }
    solution.profit = evaluate_profit(instance, routes, config);
    solution.routes = std::move(routes);
    return solution;
}

}  // namespace mprp
