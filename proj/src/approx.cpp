#include "rkc/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rkc/cost.hpp"
#include "rkc/kernels.hpp"
#include "rkc/rng.hpp"

namespace rkc {

namespace {

// Sampling weights for one seeding round: w(x) * dist(x, pool)^z with the
// top `trim` units of weight (by distance, larger id first on ties)
// zeroed out. The boundary point keeps its surviving fraction.
std::vector<double> trimmed_sampling_weights(const Dataset& X,
                                             std::span<const double> powdist,
                                             double trim) {
    const std::size_t n = X.size();
    std::vector<double> eff(X.weights.begin(), X.weights.end());
    if (trim > 0.0) {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (powdist[a] != powdist[b]) return powdist[a] > powdist[b];
            return X.ids[a] > X.ids[b];
        });
        double removed = 0.0;
        for (std::size_t i : order) {
            if (removed >= trim) break;
            const double need = trim - removed;
            if (eff[i] <= need) {
                removed += eff[i];
                eff[i] = 0.0;
            } else {
                eff[i] -= need;
                removed = trim;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) eff[i] *= powdist[i];
    return eff;
}

// Draw an index with probability proportional to `w` (serial prefix scan).
std::size_t weighted_pick(std::span<const double> w, double total, Rng& rng) {
    const double r = rng.uniform() * total;
    double run = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        run += w[i];
        if (r < run) return i;
    }
    // rounding pushed r past the running sum; take the last positive entry
    for (std::size_t i = w.size(); i-- > 0;)
        if (w[i] > 0.0) return i;
    return w.size() - 1;
}

}  // namespace

TriCriteriaSolution tri_criteria_approx(const Dataset& X, int k, double z,
                                        double m, double beta, double gamma,
                                        std::uint64_t seed) {
    if (X.empty()) throw std::invalid_argument("empty dataset");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (static_cast<std::size_t>(k) > X.size())
        throw std::invalid_argument("k exceeds dataset size");
    if (m < 0.0) throw std::invalid_argument("m must be >= 0");
    if (beta < 1.0 || gamma < 1.0)
        throw std::invalid_argument("beta and gamma must be >= 1");
    if (z < 1.0) throw std::invalid_argument("z must be >= 1");

    const std::size_t n = X.size();
    const std::size_t rounds =
        static_cast<std::size_t>(std::ceil(beta * static_cast<double>(k)));
    const double total_weight = X.total_weight();
    const double trim = std::min(gamma * m, total_weight);

    Rng rng(seed);
    TriCriteriaSolution sol;
    sol.beta = beta;
    sol.gamma = gamma;

    std::vector<double> powdist(n, std::numeric_limits<double>::infinity());
    for (std::size_t round = 0; round < rounds; ++round) {
        std::size_t pick = 0;
        if (round == 0) {
            pick = weighted_pick(X.weights, total_weight, rng);
        } else {
            const std::vector<double> sw =
                trimmed_sampling_weights(X, powdist, trim);
            const double sw_total = kernels::pairwise_sum(sw);
            if (sw_total > 0.0) {
                pick = weighted_pick(sw, sw_total, rng);
            } else {
                // trimming zeroed everything; fall back to drawing by
                // weight among points not already on a center
                std::vector<double> fallback(n, 0.0);
                double ft = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (powdist[i] > 0.0) {
                        fallback[i] = X.weights[i];
                        ft += X.weights[i];
                    }
                }
                if (ft == 0.0) break;  // every point already on a center
                pick = weighted_pick(fallback, ft, rng);
            }
        }
        sol.centers.add(X.point(pick));
        kernels::min_powdist_update(X, X.point(pick), z, powdist);
    }

    sol.achieved_cost = robust_cost(X, sol.centers, z, trim).cost;
    return sol;
}

OutlierSet find_outliers(const Dataset& X, const CenterSet& C, double count) {
    if (count < 0.0) throw std::invalid_argument("outlier count must be >= 0");
    const double total = X.total_weight();
    if (count > total * (1.0 + 1e-12) + 1e-12)
        throw std::invalid_argument("outlier count exceeds total weight");

    OutlierSet out;
    if (count == 0.0 || X.empty()) return out;

    std::vector<double> dist(X.size());
    std::vector<int> idx(X.size());
    kernels::nearest_center(X, C, dist, idx);

    std::vector<std::size_t> order(X.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (dist[a] != dist[b]) return dist[a] > dist[b];
        return X.ids[a] > X.ids[b];
    });

    double removed = 0.0;
    for (std::size_t i : order) {
        if (removed >= count) break;
        const double need = count - removed;
        const double take = std::min(X.weights[i], need);
        out.rows.push_back(i);
        out.ids.push_back(X.ids[i]);
        out.removed_weight.push_back(take);
        removed += take;
        if (take < X.weights[i]) out.boundary_id = X.ids[i];
    }
    out.total_removed = removed;
    return out;
}

}  // namespace rkc
