#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rkc/decompose.hpp"
#include "rkc/rng.hpp"
#include "rkc/types.hpp"

namespace rkc {

enum class Provenance : std::uint8_t { Outlier, RingSample, GroupEndpoint };

const char* provenance_name(Provenance p);
Provenance provenance_from_name(const std::string& s);

/// Weighted subset of a source dataset. Total weight matches the source;
/// every id exists in the source; outliers keep their source weight.
struct WeightedCoreset {
    Dataset points;
    std::vector<Provenance> provenance;

    std::size_t size() const { return points.size(); }
};

struct CoresetBuildReport {
    std::size_t target_size = 0;
    std::size_t actual_size = 0;
    double threshold_fraction = 0.0;   // t
    std::size_t ring_sample_size = 0;  // s
    std::size_t outlier_count = 0;
    std::size_t cluster_count = 0;
    std::size_t heavy_ring_count = 0;
    std::size_t group_count = 0;
    std::size_t degenerate_group_count = 0;
    double total_weight = 0.0;
    double tri_achieved_cost = 0.0;
    bool saturated = false;  // target exceeded what sampling can emit
    double build_seconds = 0.0;
};

/// Endpoints of a group compression: the closest and furthest member,
/// weighted so that both the group's mass and its cost to the center are
/// preserved exactly. A group whose members all sit at one distance
/// collapses to a single point carrying the full group weight.
struct TwoPointResult {
    std::size_t close_row = 0;
    std::size_t far_row = 0;
    double close_weight = 0.0;
    double far_weight = 0.0;
    bool degenerate = false;            // only close_row/close_weight valid
    std::vector<double> lambdas;        // per member, in member order
};

TwoPointResult two_point_coreset(const Dataset& X,
                                 std::span<const std::size_t> members,
                                 PointView center, double z);

/// Uniform sample of s members without replacement, each re-weighted by
/// (total ring weight)/s; the whole ring with original weights when
/// s >= |R|. Returns (row, weight) pairs.
std::vector<std::pair<std::size_t, double>> uniform_sample_ring(
    const Dataset& X, std::span<const std::size_t> members, std::size_t s,
    Rng& rng);

struct SampleSizing {
    std::size_t s = 0;                    // base per-ring sample size
    std::vector<std::size_t> per_ring;    // actual size per ring, with slack
    std::size_t total = 0;                // resulting coreset size
    bool saturated = false;
};

/// Largest s with m_star + sum_R min(s,|R|) + group points <= N, then one
/// extra sample to the largest rings until the total is exactly N. Throws
/// SizingError naming the minimum feasible N when N is too small; saturates
/// (total < N) when N exceeds what the decomposition can emit.
SampleSizing solve_sample_size(const Decomposition& dec, std::size_t N,
                               std::size_t m_star);

struct CoresetParams {
    int k = 5;
    double z = 1.0;
    std::size_t m = 0;
    std::size_t target_size = 0;  // N
    std::uint64_t seed = 0;
    double beta = 2.0;
    double gamma = 2.0;
    double c_t = 1.0;  // threshold constant: t = c_t / (N - m)
};

/// The full pipeline: seed a tri-criteria solution, pull out gamma*m
/// outliers but keep only m of them in the coreset (the rest rejoin the
/// inliers), decompose each cluster into rings and groups with
/// t = c_t/(N-m), uniform-sample the rings, and compress each group to its
/// two endpoints. Output has exactly N points unless N exceeds what the
/// decomposition can emit (saturation).
std::pair<WeightedCoreset, CoresetBuildReport> build_coreset(
    const Dataset& X, const CoresetParams& params);

}  // namespace rkc
