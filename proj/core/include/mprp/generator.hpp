#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mprp/model.hpp"

namespace mprp {

/// Parameters of the random instance family. The default preset keeps the
/// horizon well inside T < 4Q/n, the regime the solver's selection pressure
/// is tuned for.
struct GenParams {
    int n = 50;
    int m = 5;
    double capacity = 5000.0;
    double horizon = 100.0;
    std::uint64_t seed = 0;
};

/// Draws an n-site instance with the depot at the origin. Per site i,
/// independently:
///   window_start ~ U(0, 3T/4)
///   window_end   ~ U(window_start, T)
///   quantity     ~ Exponential(mean Q/n)
///   position     ~ radius U(0, T/4), angle U(0, 2pi), converted to Cartesian
///
/// Radius-uniform sampling is intentional (it is not area-uniform on the
/// disk): the expected depot distance is T/8. Quantities above Q are kept,
/// not resampled, so the exponential mean stays exact.
///
/// Determinism: site i draws exactly five uniforms, in the order above, from
/// its own substream seeded with derive_seed(params.seed, i). Identical
/// params produce bit-identical instances on every platform.
///
/// Throws DataError naming the violated bound on invalid params.
Instance generate(const GenParams& params);

/// Empirical moments of one sampled dimension against its theoretical target.
struct MomentEntry {
    std::string name;
    double mean = 0.0;
    double variance = 0.0;       // sample variance, n-1 denominator
    bool variance_defined = false;  // false for single-site instances
    double target = 0.0;         // NaN when no closed-form target applies
    double z = 0.0;              // (mean - target) / (sd / sqrt(n)); NaN/inf edge cases
};

struct MomentReport {
    int site_count = 0;
    std::vector<MomentEntry> entries;
};

/// Diagnostic moment report for window_start (target 3T/8), window length
/// (no target), quantity (target Q/n) and depot distance (target T/8).
/// Never rejects; callers interpret the z-scores. Throws DataError on an
/// empty instance.
MomentReport validate_assumptions(const Instance& instance);

/// Two-sided Kolmogorov-Smirnov distance between `samples` and U(lo, hi).
double ks_uniform_distance(std::vector<double> samples, double lo, double hi);

}  // namespace mprp
