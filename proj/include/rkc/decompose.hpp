#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "rkc/types.hpp"

namespace rkc {

/// Dyadic index of the zero-distance "ring" (points sitting on the center).
inline constexpr int kRingAtCenter = std::numeric_limits<int>::min();

/// Dyadic ring index: the unique integer i with 2^(i-1) < dist <= 2^i,
/// or kRingAtCenter when dist == 0.
int ring_index(double dist);
int ring_index(PointView p, PointView c);

struct Ring {
    int cluster_index = 0;
    int dyadic_index = 0;
    std::vector<std::size_t> members;  // rows into the inlier dataset
    double cost = 0.0;                 // cost_z of members to the cluster center
    double weight = 0.0;
};

/// Union of consecutive light rings [lo, hi]; empty dyadic indices inside
/// the interval are allowed. `degenerate` means all member distances to the
/// center are equal, so the two-point compression emits one point.
struct Group {
    int cluster_index = 0;
    int lo = 0;
    int hi = 0;
    std::vector<std::size_t> members;
    double cost = 0.0;
    double weight = 0.0;
    bool degenerate = false;
};

struct Decomposition {
    CenterSet centers;
    std::vector<std::vector<std::size_t>> cluster_members;
    std::vector<double> cluster_cost;  // cost_z of each cluster to its center
    std::vector<Ring> rings;
    std::vector<Group> groups;
    double threshold_fraction = 0.0;
};

/// Nearest-center assignment (smallest index on ties); one entry per row.
std::vector<int> partition_clusters(const Dataset& X, const CenterSet& C);

/// Decompose one cluster: a nonempty ring is HEAVY when its cost reaches
/// t * cost_z(cluster, center) and is emitted on its own; maximal runs of
/// consecutive light rings are merged greedily left-to-right into groups
/// whose cost stays within the same bound. Points at distance zero form
/// their own zero-cost group. Deterministic; every member lands in exactly
/// one ring or group.
void decompose_cluster(const Dataset& X, std::span<const std::size_t> members,
                       std::span<const double> dist, PointView center,
                       int cluster_index, double z, double threshold_fraction,
                       std::vector<Ring>& rings_out,
                       std::vector<Group>& groups_out,
                       double* cluster_cost_out = nullptr);

/// Assign every inlier to its nearest center and decompose each cluster.
Decomposition decompose(const Dataset& inliers, const CenterSet& centers,
                        double z, double threshold_fraction);

}  // namespace rkc
