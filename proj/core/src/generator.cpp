#include "mprp/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mprp/rng.hpp"

namespace mprp {

Instance generate(const GenParams& params) {
    if (params.n < 1) throw DataError("gen params: n must be >= 1");
    if (params.m < 1) throw DataError("gen params: m must be >= 1");
    if (!(params.capacity > 0.0))
        throw DataError("gen params: capacity must be > 0");
    if (!(params.horizon > 0.0))
        throw DataError("gen params: horizon must be > 0");

    const double T = params.horizon;
    const double mean_quantity = params.capacity / params.n;

    Instance instance;
    instance.depot_x = 0.0;
    instance.depot_y = 0.0;
    instance.fleet_size = params.m;
    instance.capacity = params.capacity;
    instance.horizon = T;
    instance.sites.reserve(params.n);

    for (int i = 0; i < params.n; ++i) {
        SplitMix64 rng(derive_seed(params.seed, static_cast<std::uint64_t>(i)));
        Site s;
        s.id = i;
        s.window_start = 0.75 * T * rng.next_double();
        s.window_end = s.window_start + (T - s.window_start) * rng.next_double();
        s.quantity = -mean_quantity * std::log1p(-rng.next_double());
        const double radius = 0.25 * T * rng.next_double();
        const double angle = 2.0 * std::numbers::pi * rng.next_double();
        s.x = radius * std::cos(angle);
        s.y = radius * std::sin(angle);
        instance.sites.push_back(s);
    }
    return instance;
}

namespace {

MomentEntry make_entry(const std::string& name, const std::vector<double>& xs,
                       double target) {
    MomentEntry e;
    e.name = name;
    e.target = target;
    const std::size_t n = xs.size();
    double sum = 0.0;
    for (double x : xs) sum += x;
    e.mean = sum / static_cast<double>(n);
    if (n >= 2) {
        double ss = 0.0;
        for (double x : xs) ss += (x - e.mean) * (x - e.mean);
        e.variance = ss / static_cast<double>(n - 1);
        e.variance_defined = true;
    }
    if (std::isnan(target)) {
        e.z = std::numeric_limits<double>::quiet_NaN();
    } else if (e.variance_defined && e.variance > 0.0) {
        e.z = (e.mean - target) /
              std::sqrt(e.variance / static_cast<double>(n));
    } else if (e.mean == target) {
        e.z = 0.0;
    } else {
        e.z = std::copysign(std::numeric_limits<double>::infinity(),
                            e.mean - target);
    }
    return e;
}

}  // namespace

MomentReport validate_assumptions(const Instance& instance) {
    const int n = instance.site_count();
    if (n == 0) throw DataError("validate_assumptions: empty instance");

    std::vector<double> starts, lengths, quantities, depot_distances;
    starts.reserve(n);
    lengths.reserve(n);
    quantities.reserve(n);
    depot_distances.reserve(n);
    for (const Site& s : instance.sites) {
        starts.push_back(s.window_start);
        lengths.push_back(s.window_end - s.window_start);
        quantities.push_back(s.quantity);
        depot_distances.push_back(
            distance(s.x, s.y, instance.depot_x, instance.depot_y));
    }

    const double T = instance.horizon;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    MomentReport report;
    report.site_count = n;
    report.entries.push_back(make_entry("window_start", starts, 3.0 * T / 8.0));
    report.entries.push_back(make_entry("window_length", lengths, nan));
    report.entries.push_back(
        make_entry("quantity", quantities, instance.capacity / n));
    report.entries.push_back(
        make_entry("depot_distance", depot_distances, T / 8.0));
    return report;
}

double ks_uniform_distance(std::vector<double> samples, double lo, double hi) {
    if (samples.empty() || !(hi > lo)) return 1.0;
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double cdf =
            std::clamp((samples[i] - lo) / (hi - lo), 0.0, 1.0);
        sup = std::max(sup, std::abs(cdf - static_cast<double>(i) / n));
        sup = std::max(sup, std::abs(static_cast<double>(i + 1) / n - cdf));
    }
    return sup;
}

}  // namespace mprp
