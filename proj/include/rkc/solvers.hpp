#pragma once

#include <cstdint>

#include "rkc/types.hpp"

namespace rkc {

struct SolveResult {
    CenterSet centers;
    double cost_on_input = 0.0;  // robust cost of `centers` on the input set
    int iterations = 0;
    double wall_seconds = 0.0;
    std::vector<double> cost_trace;  // initial cost, then one entry per
                                     // iteration / accepted swap
};

/// Outlier-aware D^z seeding restricted to exactly k centers (beta = 1,
/// gamma = 1). Throws if the data cannot support k distinct centers.
CenterSet robust_seed(const Dataset& X, int k, double m, double z,
                      std::uint64_t seed);

/// Lloyd iterations for the z = 2 objective with m outliers: mark the m
/// furthest units of weight as outliers (fractional boundary allowed),
/// assign the surviving mass to nearest centers, recenter at the weighted
/// means. Stops when the relative cost improvement drops below tol or after
/// max_iters. Empty clusters are re-seeded at the furthest surviving point.
/// The robust cost is non-increasing from iteration to iteration.
SolveResult lloyd_with_outliers(const Dataset& X, const CenterSet& init,
                                double m, double z = 2.0, int max_iters = 100,
                                double tol = 1e-6);

/// Swap-based local search over a fixed candidate pool: start from the best
/// greedy k-subset, then repeatedly apply the best single swap while it
/// improves the robust cost by at least the relative improvement_tol.
SolveResult local_search_robust_median(const Dataset& X,
                                       const CenterSet& candidates, int k,
                                       double m, double z = 1.0,
                                       int max_iters = 100,
                                       double improvement_tol = 1e-4);

/// Uniform sample of data points used as the candidate pool for the local
/// search.
CenterSet candidate_pool(const Dataset& X, std::size_t size,
                         std::uint64_t seed);

}  // namespace rkc
