#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rkc/types.hpp"

namespace rkc {

/// Seed solution used as the anchor for outlier extraction and cluster
/// decomposition: at most ceil(beta*k) centers whose cost with gamma*m
/// outliers removed is recorded in achieved_cost.
struct TriCriteriaSolution {
    CenterSet centers;
    double beta = 1.0;
    double gamma = 1.0;
    double achieved_cost = 0.0;
};

/// Outlier-aware D^z seeding. Each round forms a sampling distribution
/// from weight * dist^z to the current pool, after zeroing the top
/// gamma*m units of weight by distance so that far outliers cannot
/// dominate the draw; one data point is drawn per round, for
/// ceil(beta*k) rounds. The first center is drawn proportional to weight
/// (no distances exist yet). Deterministic under a fixed seed: the RNG
/// advances in a single sequential stream, one draw per round.
TriCriteriaSolution tri_criteria_approx(const Dataset& X, int k, double z,
                                        double m, double beta, double gamma,
                                        std::uint64_t seed);

/// The `count` units of weight furthest from C, furthest first. The last
/// entry may be a fractional share of one point's weight.
struct OutlierSet {
    std::vector<std::size_t> rows;          // row indices into the dataset
    std::vector<std::int64_t> ids;
    std::vector<double> removed_weight;     // per row; full weight except
                                            // possibly the last entry
    std::optional<std::int64_t> boundary_id;
    double total_removed = 0.0;
};

OutlierSet find_outliers(const Dataset& X, const CenterSet& C, double count);

}  // namespace rkc
