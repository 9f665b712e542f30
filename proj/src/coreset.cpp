#include "rkc/coreset.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "rkc/approx.hpp"
#include "rkc/cost.hpp"
#include "rkc/kernels.hpp"

namespace rkc {

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Outlier: return "outlier";
        case Provenance::RingSample: return "ring_sample";
        case Provenance::GroupEndpoint: return "group_endpoint";
    }
    return "unknown";
}

Provenance provenance_from_name(const std::string& s) {
    if (s == "outlier") return Provenance::Outlier;
    if (s == "ring_sample") return Provenance::RingSample;
    if (s == "group_endpoint") return Provenance::GroupEndpoint;
    throw std::invalid_argument("unknown provenance: " + s);
}

TwoPointResult two_point_coreset(const Dataset& X,
                                 std::span<const std::size_t> members,
                                 PointView center, double z) {
    if (members.empty()) throw std::invalid_argument("empty group");

    std::vector<double> pows(members.size());
    for (std::size_t j = 0; j < members.size(); ++j) {
        const double d =
            std::sqrt(kernels::squared_distance(X.point(members[j]), center));
        pows[j] = kernels::pow_z(d, z);
    }

    std::size_t close_j = 0, far_j = 0;
    for (std::size_t j = 1; j < members.size(); ++j) {
        const auto id = X.ids[members[j]];
        if (pows[j] < pows[close_j] ||
            (pows[j] == pows[close_j] && id < X.ids[members[close_j]]))
            close_j = j;
        if (pows[j] > pows[far_j] ||
            (pows[j] == pows[far_j] && id > X.ids[members[far_j]]))
            far_j = j;
    }

    TwoPointResult res;
    res.close_row = members[close_j];
    res.far_row = members[far_j];

    const double close_pow = pows[close_j];
    const double far_pow = pows[far_j];
    if (close_pow == far_pow) {
        // all members at one distance: a single point carries everything
        std::size_t best = 0;
        for (std::size_t j = 1; j < members.size(); ++j)
            if (X.ids[members[j]] < X.ids[members[best]]) best = j;
        res.close_row = members[best];
        res.degenerate = true;
        std::vector<double> ws(members.size());
        for (std::size_t j = 0; j < members.size(); ++j)
            ws[j] = X.weights[members[j]];
        res.close_weight = kernels::pairwise_sum(ws);
        res.lambdas.assign(members.size(), 1.0);
        return res;
    }

    // lambda interpolates dist^z between the endpoints:
    //   p = lambda * close^z + (1 - lambda) * far^z
    res.lambdas.resize(members.size());
    std::vector<double> close_terms(members.size()), all_weights(members.size());
    for (std::size_t j = 0; j < members.size(); ++j) {
        double lam = (far_pow - pows[j]) / (far_pow - close_pow);
        lam = std::clamp(lam, 0.0, 1.0);
        res.lambdas[j] = lam;
        all_weights[j] = X.weights[members[j]];
        close_terms[j] = lam * all_weights[j];
    }
    const double total = kernels::pairwise_sum(all_weights);
    double close_w = std::min(kernels::pairwise_sum(close_terms), total);
    // the far weight is the exact complement, nudged so the pair carries
    // the group mass bit for bit
    double far_w = total - close_w;
    while (close_w + far_w > total && far_w > 0.0)
        far_w = std::nextafter(far_w, 0.0);
    while (close_w + far_w < total)
        close_w = std::nextafter(close_w, 2.0 * total + 1.0);
    while (close_w + far_w > total && close_w > 0.0)
        close_w = std::nextafter(close_w, 0.0);
    res.close_weight = close_w;
    res.far_weight = far_w;
    return res;
}

std::vector<std::pair<std::size_t, double>> uniform_sample_ring(
    const Dataset& X, std::span<const std::size_t> members, std::size_t s,
    Rng& rng) {
    if (members.empty()) throw std::invalid_argument("empty ring");
    if (s < 1) throw std::invalid_argument("sample size must be >= 1");

    std::vector<std::pair<std::size_t, double>> out;
    if (s >= members.size()) {
        out.reserve(members.size());
        for (std::size_t row : members)
            out.emplace_back(row, X.weights[row]);
        return out;
    }

    std::vector<double> ws(members.size());
    for (std::size_t j = 0; j < members.size(); ++j)
        ws[j] = X.weights[members[j]];
    const double ring_weight = kernels::pairwise_sum(ws);
    const double each = ring_weight / static_cast<double>(s);

    std::vector<std::size_t> picks =
        rng.sample_without_replacement(members.size(), s);
    std::sort(picks.begin(), picks.end());
    out.reserve(s);
    for (std::size_t j : picks) out.emplace_back(members[j], each);
    return out;
}

SampleSizing solve_sample_size(const Decomposition& dec, std::size_t N,
                               std::size_t m_star) {
    SampleSizing sizing;
    std::size_t base = m_star;
    for (const Group& g : dec.groups) base += g.degenerate ? 1 : 2;

    const std::size_t nrings = dec.rings.size();
    sizing.per_ring.assign(nrings, 0);

    if (nrings == 0) {
        if (N < base)
            throw SizingError("target size " + std::to_string(N) +
                                  " below minimum feasible " +
                                  std::to_string(base),
                              base);
        sizing.total = base;
        sizing.saturated = (N > base);
        return sizing;
    }

    const std::size_t min_feasible = base + nrings;
    if (N < min_feasible)
        throw SizingError("target size " + std::to_string(N) +
                              " below minimum feasible " +
                              std::to_string(min_feasible),
                          min_feasible);

    std::size_t ring_capacity = 0;
    std::size_t largest = 0;
    for (const Ring& r : dec.rings) {
        ring_capacity += r.members.size();
        largest = std::max(largest, r.members.size());
    }
    if (N >= base + ring_capacity) {
        for (std::size_t i = 0; i < nrings; ++i)
            sizing.per_ring[i] = dec.rings[i].members.size();
        sizing.s = largest;
        sizing.total = base + ring_capacity;
        sizing.saturated = (N > sizing.total);
        return sizing;
    }

    auto filled = [&](std::size_t s) {
        std::size_t t = 0;
        for (const Ring& r : dec.rings) t += std::min(s, r.members.size());
        return t;
    };

    // largest s with base + sum min(s, |R|) <= N
    std::size_t lo = 1, hi = largest;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo + 1) / 2;
        if (base + filled(mid) <= N)
            lo = mid;
        else
            hi = mid - 1;
    }
    const std::size_t s = lo;
    sizing.s = s;
    std::size_t total = base;
    for (std::size_t i = 0; i < nrings; ++i) {
        sizing.per_ring[i] = std::min(s, dec.rings[i].members.size());
        total += sizing.per_ring[i];
    }

    // hand remaining slack to the largest rings, one extra sample each
    std::size_t slack = N - total;
    if (slack > 0) {
        std::vector<std::size_t> order(nrings);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                             return dec.rings[a].members.size() >
                                    dec.rings[b].members.size();
                         });
        for (std::size_t i : order) {
            if (slack == 0) break;
            if (sizing.per_ring[i] < dec.rings[i].members.size()) {
                ++sizing.per_ring[i];
                ++total;
                --slack;
            }
        }
    }
    sizing.total = total;
    sizing.saturated = false;
    return sizing;
}

std::pair<WeightedCoreset, CoresetBuildReport> build_coreset(
    const Dataset& X, const CoresetParams& params) {
    const auto t0 = std::chrono::steady_clock::now();
    if (X.empty()) throw std::invalid_argument("empty dataset");
    if (params.m > X.size())
        throw std::invalid_argument("m exceeds dataset size");
    if (params.target_size < 1)
        throw std::invalid_argument("target size must be >= 1");
    if (params.c_t <= 0.0) throw std::invalid_argument("c_t must be > 0");

    const std::size_t n = X.size();
    const std::size_t N = params.target_size;
    const std::size_t m = params.m;

    TriCriteriaSolution tri =
        tri_criteria_approx(X, params.k, params.z, static_cast<double>(m),
                            params.beta, params.gamma,
                            derive_seed(params.seed, 0x5eedULL));

    // rank all points by distance to the seed centers (furthest first,
    // larger id first on ties); the m furthest become coreset outliers,
    // the rest -- including the other found outliers up to gamma*m --
    // stay with the inliers
    std::vector<double> dist(n);
    std::vector<int> idx(n);
    kernels::nearest_center(X, tri.centers, dist, idx);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (dist[a] != dist[b]) return dist[a] > dist[b];
        return X.ids[a] > X.ids[b];
    });
    std::vector<std::size_t> outlier_rows(order.begin(), order.begin() + m);
    std::vector<std::size_t> inlier_rows(order.begin() + m, order.end());
    std::sort(inlier_rows.begin(), inlier_rows.end());
    const Dataset inliers = X.subset(inlier_rows);

    double t_frac = 1.0;
    if (N > m)
        t_frac = std::min(1.0, params.c_t / static_cast<double>(N - m));

    Decomposition dec;
    if (!inliers.empty()) dec = decompose(inliers, tri.centers, params.z, t_frac);

    const SampleSizing sizing = solve_sample_size(dec, N, m);

    struct Entry {
        std::size_t src_row;       // row in X or in inliers
        bool from_inliers;
        double weight;
        Provenance tag;
    };
    std::vector<Entry> entries;
    entries.reserve(sizing.total);

    for (std::size_t row : outlier_rows)
        entries.push_back({row, false, X.weights[row], Provenance::Outlier});

    for (std::size_t i = 0; i < dec.rings.size(); ++i) {
        const Ring& r = dec.rings[i];
        Rng rng(derive_seed(params.seed, 0x71a6ULL,
                            static_cast<std::uint64_t>(r.cluster_index),
                            static_cast<std::uint64_t>(
                                static_cast<std::int64_t>(r.dyadic_index))));
        for (auto [row, w] :
             uniform_sample_ring(inliers, r.members, sizing.per_ring[i], rng))
            entries.push_back({row, true, w, Provenance::RingSample});
    }

    for (const Group& g : dec.groups) {
        const TwoPointResult tp = two_point_coreset(
            inliers, g.members, dec.centers.center(g.cluster_index), params.z);
        entries.push_back(
            {tp.close_row, true, tp.close_weight, Provenance::GroupEndpoint});
        if (!tp.degenerate)
            entries.push_back(
                {tp.far_row, true, tp.far_weight, Provenance::GroupEndpoint});
    }

    std::sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
        const std::int64_t ia = a.from_inliers ? inliers.ids[a.src_row] : X.ids[a.src_row];
        const std::int64_t ib = b.from_inliers ? inliers.ids[b.src_row] : X.ids[b.src_row];
        return ia < ib;
    });

    WeightedCoreset cs;
    cs.points.dim = X.dim;
    cs.provenance.reserve(entries.size());
    for (const Entry& e : entries) {
        const Dataset& src = e.from_inliers ? inliers : X;
        cs.points.add(src.point(e.src_row), e.weight, src.ids[e.src_row]);
        cs.provenance.push_back(e.tag);
    }

    CoresetBuildReport rep;
    rep.target_size = N;
    rep.actual_size = cs.size();
    rep.threshold_fraction = t_frac;
    rep.ring_sample_size = sizing.s;
    rep.outlier_count = m;
    rep.cluster_count = tri.centers.size();
    rep.heavy_ring_count = dec.rings.size();
    rep.group_count = dec.groups.size();
    for (const Group& g : dec.groups)
        if (g.degenerate) ++rep.degenerate_group_count;
    rep.total_weight = cs.points.total_weight();
    rep.tri_achieved_cost = tri.achieved_cost;
    rep.saturated = sizing.saturated;
    rep.build_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return {std::move(cs), rep};
}

}  // namespace rkc
