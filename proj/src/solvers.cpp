#include "rkc/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "rkc/approx.hpp"
#include "rkc/cost.hpp"
#include "rkc/kernels.hpp"
#include "rkc/rng.hpp"

namespace rkc {

CenterSet robust_seed(const Dataset& X, int k, double m, double z,
                      std::uint64_t seed) {
    TriCriteriaSolution tri = tri_criteria_approx(X, k, z, m, 1.0, 1.0, seed);
    if (tri.centers.size() < static_cast<std::size_t>(k))
        throw std::invalid_argument(
            "fewer distinct points than requested centers");
    return std::move(tri.centers);
}

namespace {

// Surviving weight per point after removing the m furthest units
// (furthest first, larger id first on ties).
std::vector<double> surviving_weights(const Dataset& X,
                                      std::span<const double> dist, double m) {
    std::vector<double> surv(X.weights.begin(), X.weights.end());
    if (m <= 0.0) return surv;
    std::vector<std::size_t> order(X.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (dist[a] != dist[b]) return dist[a] > dist[b];
        return X.ids[a] > X.ids[b];
    });
    double removed = 0.0;
    for (std::size_t i : order) {
        if (removed >= m) break;
        const double take = std::min(surv[i], m - removed);
        surv[i] -= take;
        removed += take;
    }
    return surv;
}

}  // namespace

SolveResult lloyd_with_outliers(const Dataset& X, const CenterSet& init,
                                double m, double z, int max_iters, double tol) {
    const auto t0 = std::chrono::steady_clock::now();
    if (z != 2.0)
        throw std::invalid_argument("the means update requires z = 2");
    if (init.empty()) throw std::invalid_argument("empty initial center set");
    require_same_dim(X, init);
    const double total = X.total_weight();
    if (m < 0.0 || m > total * (1.0 + 1e-12) + 1e-12)
        throw std::invalid_argument("m out of range");

    const std::size_t k = init.size();
    const std::size_t d = X.dim;
    CenterSet centers = init;
    double prev = robust_cost(X, centers, z, m).cost;
    SolveResult res;
    res.iterations = 0;
    res.cost_trace.push_back(prev);

    std::vector<double> dist(X.size());
    std::vector<int> idx(X.size());
    for (int iter = 1; iter <= max_iters; ++iter) {
        res.iterations = iter;
        kernels::nearest_center(X, centers, dist, idx);
        const std::vector<double> surv = surviving_weights(X, dist, m);

        // serial accumulation in row order: reduction order fixed, so the
        // means do not depend on the thread count
        std::vector<double> sums(k * d, 0.0);
        std::vector<double> mass(k, 0.0);
        for (std::size_t i = 0; i < X.size(); ++i) {
            const double w = surv[i];
            if (w <= 0.0) continue;
            const PointView p = X.point(i);
            double* s = sums.data() + static_cast<std::size_t>(idx[i]) * d;
            for (std::size_t j = 0; j < d; ++j) s[j] += w * p[j];
            mass[idx[i]] += w;
        }

        bool any_mass = false;
        for (double w : mass) any_mass |= (w > 0.0);
        if (!any_mass) break;  // everything removed as outliers

        CenterSet next;
        next.dim = d;
        std::vector<std::size_t> empties;
        for (std::size_t c = 0; c < k; ++c) {
            if (mass[c] > 0.0) {
                Point mean(d);
                for (std::size_t j = 0; j < d; ++j)
                    mean[j] = sums[c * d + j] / mass[c];
                next.add(mean);
            } else {
                next.add(centers.center(c));  // placeholder, repaired below
                empties.push_back(c);
            }
        }

        if (!empties.empty()) {
            // furthest surviving points, one per empty cluster
            std::vector<std::size_t> order;
            for (std::size_t i = 0; i < X.size(); ++i)
                if (surv[i] > 0.0) order.push_back(i);
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          if (dist[a] != dist[b]) return dist[a] > dist[b];
                          return X.ids[a] > X.ids[b];
                      });
            for (std::size_t e = 0; e < empties.size(); ++e) {
                const std::size_t pick = order[std::min(e, order.size() - 1)];
                std::copy_n(X.point(pick).data(), d,
                            next.coords.data() + empties[e] * d);
            }
        }

        centers = std::move(next);
        const double cost = robust_cost(X, centers, z, m).cost;
        res.cost_trace.push_back(cost);
        const bool converged = (prev - cost) < tol * std::max(prev, 1e-300);
        prev = cost;
        if (converged) break;
    }

    res.centers = std::move(centers);
    res.cost_on_input = prev;
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return res;
}

namespace {

// Distances from every point to one candidate center.
std::vector<double> distance_row(const Dataset& X, PointView c) {
    std::vector<double> out(X.size());
    const std::int64_t n = static_cast<std::int64_t>(X.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t i = 0; i < n; ++i)
        out[i] = std::sqrt(
            kernels::squared_distance(X.point(static_cast<std::size_t>(i)), c));
    return out;
}

double cost_of_dists(const Dataset& X, std::span<const double> dist, double z,
                     double m) {
    return robust_cost_from_rows(dist, X.weights, X.ids, z, m).cost;
}

}  // namespace

SolveResult local_search_robust_median(const Dataset& X,
                                       const CenterSet& candidates, int k,
                                       double m, double z, int max_iters,
                                       double improvement_tol) {
    const auto t0 = std::chrono::steady_clock::now();
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (candidates.size() < static_cast<std::size_t>(k))
        throw std::invalid_argument("candidate pool smaller than k");
    require_same_dim(X, candidates);

    const std::size_t ncand = candidates.size();
    const std::size_t n = X.size();

    // greedy start: repeatedly add the candidate that minimizes the
    // robust cost of the pool chosen so far
    std::vector<std::size_t> chosen;
    std::vector<double> cur_min(n, std::numeric_limits<double>::infinity());
    std::vector<char> in_use(ncand, 0);
    for (int round = 0; round < k; ++round) {
        double best_cost = std::numeric_limits<double>::infinity();
        std::size_t best_c = ncand;
        std::vector<double> best_min;
        for (std::size_t c = 0; c < ncand; ++c) {
            if (in_use[c]) continue;
            const std::vector<double> row = distance_row(X, candidates.center(c));
            std::vector<double> merged(n);
            for (std::size_t i = 0; i < n; ++i)
                merged[i] = std::min(cur_min[i], row[i]);
            const double cost = cost_of_dists(X, merged, z, m);
            if (cost < best_cost) {
                best_cost = cost;
                best_c = c;
                best_min = std::move(merged);
            }
        }
        chosen.push_back(best_c);
        in_use[best_c] = 1;
        cur_min = std::move(best_min);
    }
    double cur_cost = cost_of_dists(X, cur_min, z, m);

    SolveResult res;
    res.iterations = 0;
    res.cost_trace.push_back(cur_cost);

    // cached distance rows for the chosen centers
    std::vector<std::vector<double>> chosen_rows(k);
    for (int j = 0; j < k; ++j)
        chosen_rows[j] = distance_row(X, candidates.center(chosen[j]));

    for (int iter = 0; iter < max_iters; ++iter) {
        // per-point minimum over the chosen set minus one center
        std::vector<std::vector<double>> min_excl(
            k, std::vector<double>(n, std::numeric_limits<double>::infinity()));
        for (int out = 0; out < k; ++out)
            for (int j = 0; j < k; ++j) {
                if (j == out) continue;
                auto& dst = min_excl[out];
                const auto& src = chosen_rows[j];
                for (std::size_t i = 0; i < n; ++i)
                    dst[i] = std::min(dst[i], src[i]);
            }

        double best_cost = cur_cost;
        int best_out = -1;
        std::size_t best_in = 0;
        std::vector<double> swap_costs(ncand * k,
                                       std::numeric_limits<double>::infinity());
        const std::int64_t nc = static_cast<std::int64_t>(ncand);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::int64_t in = 0; in < nc; ++in) {
            if (in_use[in]) continue;
            const std::vector<double> row =
                distance_row(X, candidates.center(static_cast<std::size_t>(in)));
            std::vector<double> merged(n);
            for (int out = 0; out < k; ++out) {
                for (std::size_t i = 0; i < n; ++i)
                    merged[i] = std::min(min_excl[out][i], row[i]);
                swap_costs[static_cast<std::size_t>(in) * k + out] =
                    cost_of_dists(X, merged, z, m);
            }
        }
        for (std::size_t in = 0; in < ncand; ++in)
            for (int out = 0; out < k; ++out) {
                const double c = swap_costs[in * k + out];
                if (c < best_cost) {
                    best_cost = c;
                    best_out = out;
                    best_in = in;
                }
            }

        if (best_out < 0 ||
            best_cost > (1.0 - improvement_tol) * cur_cost)
            break;  // local optimum at the configured tolerance

        in_use[chosen[best_out]] = 0;
        in_use[best_in] = 1;
        chosen[best_out] = best_in;
        chosen_rows[best_out] = distance_row(X, candidates.center(best_in));
        cur_cost = best_cost;
        res.cost_trace.push_back(cur_cost);
        res.iterations = iter + 1;
    }

    for (std::size_t c : chosen) res.centers.add(candidates.center(c));
    res.cost_on_input = cur_cost;
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return res;
}

CenterSet candidate_pool(const Dataset& X, std::size_t size,
                         std::uint64_t seed) {
    if (size > X.size())
        throw std::invalid_argument("pool size exceeds dataset size");
    Rng rng(derive_seed(seed, 0xca9dULL));
    std::vector<std::size_t> rows = rng.sample_without_replacement(X.size(), size);
    std::sort(rows.begin(), rows.end());
    return CenterSet::from_rows(X, rows);
}

}  // namespace rkc
