#include "rkc/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "rkc/kernels.hpp"

namespace rkc {

int ring_index(double dist) {
    if (dist < 0.0 || !std::isfinite(dist))
        throw std::invalid_argument("distance must be finite and >= 0");
    if (dist == 0.0) return kRingAtCenter;
    int e = 0;
    const double f = std::frexp(dist, &e);  // dist = f * 2^e, f in [0.5, 1)
    return (f == 0.5) ? e - 1 : e;
}

int ring_index(PointView p, PointView c) {
    return ring_index(std::sqrt(kernels::squared_distance(p, c)));
}

std::vector<int> partition_clusters(const Dataset& X, const CenterSet& C) {
    if (C.empty()) throw std::invalid_argument("empty center set");
    std::vector<double> dist(X.size());
    std::vector<int> idx(X.size());
    kernels::nearest_center(X, C, dist, idx);
    return idx;
}

namespace {

struct Bucket {
    std::vector<std::size_t> rows;
    std::vector<double> terms;   // weight * dist^z per member
    std::vector<double> wts;
    double min_pow = std::numeric_limits<double>::infinity();
    double max_pow = -std::numeric_limits<double>::infinity();
};

}  // namespace

void decompose_cluster(const Dataset& X, std::span<const std::size_t> members,
                       std::span<const double> dist, PointView center,
                       int cluster_index, double z, double threshold_fraction,
                       std::vector<Ring>& rings_out,
                       std::vector<Group>& groups_out,
                       double* cluster_cost_out) {
    (void)center;
    if (threshold_fraction <= 0.0 || threshold_fraction > 1.0)
        throw std::invalid_argument("threshold fraction must be in (0, 1]");
    if (members.empty()) {
        if (cluster_cost_out) *cluster_cost_out = 0.0;
        return;
    }

    // bucket members by dyadic index; std::map keeps indices sorted
    std::map<int, Bucket> buckets;
    std::vector<double> all_terms;
    all_terms.reserve(members.size());
    for (std::size_t mi = 0; mi < members.size(); ++mi) {
        const std::size_t row = members[mi];
        const double p = kernels::pow_z(dist[mi], z);
        const double term = X.weights[row] * p;
        Bucket& b = buckets[ring_index(dist[mi])];
        b.rows.push_back(row);
        b.terms.push_back(term);
        b.wts.push_back(X.weights[row]);
        b.min_pow = std::min(b.min_pow, p);
        b.max_pow = std::max(b.max_pow, p);
        all_terms.push_back(term);
    }

    const double total_cost = kernels::pairwise_sum(all_terms);
    const double threshold = threshold_fraction * total_cost;
    if (cluster_cost_out) *cluster_cost_out = total_cost;

    // points on the center: always their own zero-cost group
    if (auto it = buckets.find(kRingAtCenter); it != buckets.end()) {
        Group g;
        g.cluster_index = cluster_index;
        g.lo = g.hi = kRingAtCenter;
        g.members = std::move(it->second.rows);
        g.cost = 0.0;
        g.weight = kernels::pairwise_sum(it->second.wts);
        g.degenerate = true;
        groups_out.push_back(std::move(g));
        buckets.erase(it);
    }

    Group open;  // group under construction
    double open_min = 0.0, open_max = 0.0;
    bool has_open = false;
    auto flush = [&]() {
        if (!has_open) return;
        open.degenerate = (open_min == open_max);
        groups_out.push_back(std::move(open));
        open = Group{};
        has_open = false;
    };

    for (auto& [ri, b] : buckets) {
        const double ring_cost = kernels::pairwise_sum(b.terms);
        const double ring_weight = kernels::pairwise_sum(b.wts);
        const bool heavy = total_cost > 0.0 && ring_cost >= threshold;
        if (heavy) {
            flush();
            Ring r;
            r.cluster_index = cluster_index;
            r.dyadic_index = ri;
            r.members = std::move(b.rows);
            r.cost = ring_cost;
            r.weight = ring_weight;
            rings_out.push_back(std::move(r));
            continue;
        }
        if (has_open && open.cost + ring_cost <= threshold) {
            open.hi = ri;
            open.members.insert(open.members.end(), b.rows.begin(),
                                b.rows.end());
            open.cost += ring_cost;
            open.weight += ring_weight;
            open_min = std::min(open_min, b.min_pow);
            open_max = std::max(open_max, b.max_pow);
        } else {
            flush();
            open.cluster_index = cluster_index;
            open.lo = open.hi = ri;
            open.members = std::move(b.rows);
            open.cost = ring_cost;
            open.weight = ring_weight;
            open_min = b.min_pow;
            open_max = b.max_pow;
            has_open = true;
        }
    }
    flush();
}

Decomposition decompose(const Dataset& inliers, const CenterSet& centers,
                        double z, double threshold_fraction) {
    Decomposition dec;
    dec.centers = centers;
    dec.threshold_fraction = threshold_fraction;
    dec.cluster_members.resize(centers.size());
    dec.cluster_cost.assign(centers.size(), 0.0);
    if (inliers.empty()) return dec;

    std::vector<double> dist(inliers.size());
    std::vector<int> idx(inliers.size());
    kernels::nearest_center(inliers, centers, dist, idx);
    for (std::size_t i = 0; i < inliers.size(); ++i)
        dec.cluster_members[idx[i]].push_back(i);

    // clusters decompose independently; results are concatenated in
    // cluster order so the output does not depend on the thread count
    const std::int64_t kc = static_cast<std::int64_t>(centers.size());
    std::vector<std::vector<Ring>> rings_per(kc);
    std::vector<std::vector<Group>> groups_per(kc);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t c = 0; c < kc; ++c) {
        const auto& mem = dec.cluster_members[c];
        std::vector<double> mdist(mem.size());
        for (std::size_t j = 0; j < mem.size(); ++j) mdist[j] = dist[mem[j]];
        decompose_cluster(inliers, mem, mdist, centers.center(c),
                          static_cast<int>(c), z, threshold_fraction,
                          rings_per[c], groups_per[c], &dec.cluster_cost[c]);
    }
    for (std::int64_t c = 0; c < kc; ++c) {
        for (auto& r : rings_per[c]) dec.rings.push_back(std::move(r));
        for (auto& g : groups_per[c]) dec.groups.push_back(std::move(g));
    }
    return dec;
}

}  // namespace rkc
