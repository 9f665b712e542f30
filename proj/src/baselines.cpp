#include "rkc/baselines.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "rkc/approx.hpp"
#include "rkc/kernels.hpp"
#include "rkc/rng.hpp"

namespace rkc {

namespace {

WeightedCoreset from_rows(const Dataset& X,
                          std::vector<std::size_t> rows,
                          const std::vector<double>& row_weight,
                          const std::vector<Provenance>& tag) {
    // canonical order: ascending id
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return X.ids[rows[a]] < X.ids[rows[b]];
    });
    WeightedCoreset cs;
    cs.points.dim = X.dim;
    for (std::size_t j : order) {
        cs.points.add(X.point(rows[j]), row_weight[j], X.ids[rows[j]]);
        cs.provenance.push_back(tag[j]);
    }
    return cs;
}

}  // namespace

WeightedCoreset uniform_sampling_coreset(const Dataset& X, std::size_t N,
                                         std::uint64_t seed) {
    if (N < 1 || N > X.size())
        throw std::invalid_argument("target size must be in [1, |X|]");
    Rng rng(derive_seed(seed, 0x05ULL));
    std::vector<std::size_t> rows = rng.sample_without_replacement(X.size(), N);
    const double each = X.total_weight() / static_cast<double>(N);
    std::vector<double> w(N, each);
    std::vector<Provenance> tag(N, Provenance::RingSample);
    return from_rows(X, std::move(rows), w, tag);
}

WeightedCoreset outlier_aware_uniform(const Dataset& X, int k, double z,
                                      std::size_t m, std::size_t N,
                                      std::uint64_t seed) {
    if (N <= m) throw std::invalid_argument("target size must exceed m");
    if (N > X.size())
        throw std::invalid_argument("target size exceeds dataset size");

    const TriCriteriaSolution tri = tri_criteria_approx(
        X, k, z, static_cast<double>(m), 2.0, 2.0, derive_seed(seed, 0x0aULL));

    std::vector<double> dist(X.size());
    std::vector<int> idx(X.size());
    kernels::nearest_center(X, tri.centers, dist, idx);
    std::vector<std::size_t> order(X.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (dist[a] != dist[b]) return dist[a] > dist[b];
        return X.ids[a] > X.ids[b];
    });

    std::vector<std::size_t> rows(order.begin(), order.begin() + m);
    std::vector<double> w;
    std::vector<Provenance> tag(m, Provenance::Outlier);
    double outlier_mass = 0.0;
    for (std::size_t r : rows) {
        w.push_back(X.weights[r]);
        outlier_mass += X.weights[r];
    }

    std::vector<std::size_t> rest(order.begin() + m, order.end());
    std::sort(rest.begin(), rest.end());
    Rng rng(derive_seed(seed, 0x0bULL));
    const std::size_t draws = N - m;
    const double each =
        (X.total_weight() - outlier_mass) / static_cast<double>(draws);
    for (std::size_t j : rng.sample_without_replacement(rest.size(), draws)) {
        rows.push_back(rest[j]);
        w.push_back(each);
        tag.push_back(Provenance::RingSample);
    }
    return from_rows(X, std::move(rows), w, tag);
}

WeightedCoreset sensitivity_sampling_coreset(const Dataset& X, int k, double z,
                                             std::size_t m, std::size_t N,
                                             std::uint64_t seed) {
    if (N < 1) throw std::invalid_argument("target size must be >= 1");

    const TriCriteriaSolution tri = tri_criteria_approx(
        X, k, z, static_cast<double>(m), 2.0, 2.0, derive_seed(seed, 0x55ULL));

    std::vector<double> dist(X.size());
    std::vector<int> idx(X.size());
    kernels::nearest_center(X, tri.centers, dist, idx);
    std::vector<std::size_t> order(X.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (dist[a] != dist[b]) return dist[a] > dist[b];
        return X.ids[a] > X.ids[b];
    });

    std::vector<bool> is_outlier(X.size(), false);
    for (std::size_t j = 0; j < m && j < order.size(); ++j)
        is_outlier[order[j]] = true;

    // inlier cluster masses and total inlier cost to the seed centers
    std::vector<double> cluster_mass(tri.centers.size(), 0.0);
    std::vector<double> terms;
    terms.reserve(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) {
        if (is_outlier[i]) continue;
        cluster_mass[idx[i]] += X.weights[i];
        terms.push_back(X.weights[i] * kernels::pow_z(dist[i], z));
    }
    const double inlier_cost = kernels::pairwise_sum(terms);

    std::vector<double> sigma(X.size(), 0.0);
    for (std::size_t i = 0; i < X.size(); ++i) {
        if (is_outlier[i]) {
            sigma[i] = 1.0;
            continue;
        }
        double s = X.weights[i] / cluster_mass[idx[i]];
        if (inlier_cost > 0.0)
            s += X.weights[i] * kernels::pow_z(dist[i], z) / inlier_cost;
        sigma[i] = s;
    }

    std::vector<double> prefix(X.size());
    double run = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        run += sigma[i];
        prefix[i] = run;
    }
    const double sigma_total = run;

    Rng rng(derive_seed(seed, 0x56ULL));
    std::map<std::size_t, double> picked;  // row -> accumulated weight
    for (std::size_t d = 0; d < N; ++d) {
        const double r = rng.uniform() * sigma_total;
        const auto it = std::upper_bound(prefix.begin(), prefix.end(), r);
        std::size_t i = static_cast<std::size_t>(
            std::min<std::ptrdiff_t>(it - prefix.begin(),
                                     static_cast<std::ptrdiff_t>(X.size()) - 1));
        const double p = sigma[i] / sigma_total;
        picked[i] += X.weights[i] / (static_cast<double>(N) * p);
    }

    std::vector<std::size_t> rows;
    std::vector<double> w;
    std::vector<Provenance> tag;
    for (const auto& [row, weight] : picked) {
        rows.push_back(row);
        w.push_back(weight);
        tag.push_back(is_outlier[row] ? Provenance::Outlier
                                      : Provenance::RingSample);
    }
    return from_rows(X, std::move(rows), w, tag);
}

}  // namespace rkc
