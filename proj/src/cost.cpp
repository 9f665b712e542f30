#include "rkc/cost.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "rkc/kernels.hpp"

namespace rkc {

namespace {

struct Row {
    double dist;
    double weight;
    std::int64_t id;
};

// Removal order: furthest first; among equal distances the larger id goes
// first. A strict total order keeps everything reproducible.
bool removal_before(const Row& a, const Row& b) {
    if (a.dist != b.dist) return a.dist > b.dist;
    return a.id > b.id;
}

void validate_m(double m, double total) {
    if (m < 0.0) throw std::invalid_argument("outlier weight m must be >= 0");
    if (m > total * (1.0 + 1e-12) + 1e-12)
        throw std::invalid_argument("outlier weight m exceeds total weight");
}

std::vector<double> nearest_distances(const Dataset& X, const CenterSet& C) {
    std::vector<double> dist(X.size());
    std::vector<int> idx(X.size());
    kernels::nearest_center(X, C, dist, idx);
    return dist;
}

// Cost of the suffix of `rows` that survives removing `m` units of weight
// from the front of the sorted-for-removal order.
RobustCostResult cost_after_removal(std::vector<Row>& rows, double z, double m) {
    std::sort(rows.begin(), rows.end(), removal_before);

    RobustCostResult res;
    std::size_t i = 0;
    double removed = 0.0;
    double boundary_term = 0.0;
    while (i < rows.size() && removed < m) {
        const double need = m - removed;
        if (rows[i].weight <= need) {
            removed += rows[i].weight;
            ++i;
        } else {
            // split this point: `need` removed, the rest survives
            res.boundary_id = rows[i].id;
            res.boundary_removed_weight = need;
            boundary_term =
                (rows[i].weight - need) * kernels::pow_z(rows[i].dist, z);
            removed = m;
            ++i;
            break;
        }
    }
    res.outlier_mass_removed = removed;

    std::vector<double> terms;
    terms.reserve(rows.size() - i + 1);
    if (res.boundary_id) terms.push_back(boundary_term);
    for (std::size_t j = i; j < rows.size(); ++j)
        terms.push_back(rows[j].weight * kernels::pow_z(rows[j].dist, z));
    res.cost = kernels::pairwise_sum(terms);
    return res;
}

double row_order_cost(std::span<const double> dist,
                      std::span<const double> weight, double z) {
    std::vector<double> terms(dist.size());
    for (std::size_t i = 0; i < dist.size(); ++i)
        terms[i] = weight[i] * kernels::pow_z(dist[i], z);
    return kernels::pairwise_sum(terms);
}

}  // namespace

std::pair<std::size_t, double> nearest_center(PointView p, const CenterSet& C) {
    if (C.empty()) throw std::invalid_argument("empty center set");
    if (p.size() != C.dim)
        throw std::invalid_argument("point/center dimension mismatch");
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < C.size(); ++j) {
        const double d2 = kernels::squared_distance(p, C.center(j));
        if (d2 < best) {
            best = d2;
            best_j = j;
        }
    }
    return {best_j, std::sqrt(best)};
}

double cost_vanilla(const Dataset& X, const CenterSet& C, double z) {
    if (z < 1.0) throw std::invalid_argument("z must be >= 1");
    if (X.empty()) return 0.0;
    const std::vector<double> dist = nearest_distances(X, C);
    return row_order_cost(dist, X.weights, z);
}

RobustCostResult robust_cost_from_rows(std::span<const double> dist,
                                       std::span<const double> weight,
                                       std::span<const std::int64_t> id,
                                       double z, double m) {
    if (z < 1.0) throw std::invalid_argument("z must be >= 1");
    validate_m(m, kernels::pairwise_sum(weight));
    if (m == 0.0) {
        // keeps robust_cost(m=0) bit-identical to cost_vanilla
        RobustCostResult res;
        res.cost = row_order_cost(dist, weight, z);
        return res;
    }
    std::vector<Row> rows(dist.size());
    for (std::size_t i = 0; i < dist.size(); ++i)
        rows[i] = Row{dist[i], weight[i], id[i]};
    return cost_after_removal(rows, z, m);
}

RobustCostResult robust_cost(const Dataset& X, const CenterSet& C, double z,
                             double m) {
    if (z < 1.0) throw std::invalid_argument("z must be >= 1");
    if (X.empty()) {
        validate_m(m, 0.0);
        return {};
    }
    const std::vector<double> dist = nearest_distances(X, C);
    return robust_cost_from_rows(dist, X.weights, X.ids, z, m);
}

std::vector<double> robust_cost_multi(const Dataset& X, const CenterSet& C,
                                      double z, std::span<const double> ms) {
    if (z < 1.0) throw std::invalid_argument("z must be >= 1");
    std::vector<double> out(ms.size(), 0.0);
    if (X.empty()) {
        for (double m : ms) validate_m(m, 0.0);
        return out;
    }
    const double total = X.total_weight();
    for (double m : ms) validate_m(m, total);
    const std::vector<double> dist = nearest_distances(X, C);
    std::vector<Row> rows(X.size());
    for (std::size_t i = 0; i < X.size(); ++i)
        rows[i] = Row{dist[i], X.weights[i], X.ids[i]};
    for (std::size_t t = 0; t < ms.size(); ++t) {
        if (ms[t] == 0.0) {
            out[t] = row_order_cost(dist, X.weights, z);
        } else {
            std::vector<Row> copy = rows;
            out[t] = cost_after_removal(copy, z, ms[t]).cost;
        }
    }
    return out;
}

double brute_force_robust_cost(const Dataset& X, const CenterSet& C, double z,
                               int m) {
    if (X.size() > 12)
        throw std::invalid_argument("brute-force oracle limited to |X| <= 12");
    if (!X.unit_weights())
        throw std::invalid_argument("brute-force oracle requires unit weights");
    if (m < 0 || static_cast<std::size_t>(m) > X.size())
        throw std::invalid_argument("m out of range");

    const std::vector<double> dist = nearest_distances(X, C);
    const std::size_t n = X.size();

    // enumerate all size-m subsets via bitmask popcount
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != m) continue;
        double c = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (!(mask & (1u << i))) c += kernels::pow_z(dist[i], z);
        best = std::min(best, c);
    }
    return best;
}

double robust_cost_integral(const Dataset& X, const CenterSet& C, double z,
                            double m, int quadrature_steps) {
    if (z < 1.0) throw std::invalid_argument("z must be >= 1");
    if (quadrature_steps < 1)
        throw std::invalid_argument("quadrature_steps must be >= 1");
    if (X.empty()) {
        validate_m(m, 0.0);
        return 0.0;
    }
    const double total = X.total_weight();
    validate_m(m, total);

    std::vector<double> dist = nearest_distances(X, C);
    std::vector<std::size_t> order(X.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (dist[a] != dist[b]) return dist[a] < dist[b];
        return X.ids[a] < X.ids[b];
    });

    // breakpoints = sorted distinct distances; between consecutive ones the
    // ball mass w(Balls(C,u) cap X) is constant
    std::vector<double> breaks;
    std::vector<double> mass_upto;  // mass with dist <= breaks[j]
    double cum = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        cum += X.weights[order[k]];
        const double d = dist[order[k]];
        if (k + 1 < order.size() && dist[order[k + 1]] == d) continue;
        breaks.push_back(d);
        mass_upto.push_back(cum);
    }

    std::vector<double> contributions;
    double lo = 0.0;
    double mass_before = 0.0;  // ball mass on the open segment below breaks[j]
    for (std::size_t j = 0; j < breaks.size(); ++j) {
        const double hi = breaks[j];
        if (hi > lo) {
            const double surplus = std::max(total - m - mass_before, 0.0);
            if (surplus > 0.0) {
                // integral of z u^(z-1) over [lo, hi] = hi^z - lo^z,
                // optionally split into quadrature_steps slices
                double a = lo;
                for (int s = 1; s <= quadrature_steps; ++s) {
                    const double b =
                        (s == quadrature_steps)
                            ? hi
                            : lo + (hi - lo) * static_cast<double>(s) /
                                       quadrature_steps;
                    contributions.push_back(
                        (kernels::pow_z(b, z) - kernels::pow_z(a, z)) * surplus);
                    a = b;
                }
            }
        }
        lo = hi;
        mass_before = mass_upto[j];
    }
    return kernels::pairwise_sum(contributions);
}

std::pair<bool, bool> check_triangle_lemma(double a, double b, double delta,
                                           double z) {
    const double lhs = std::pow(a + b, z);
    const double az = std::pow(a, z);
    const double bz = std::pow(b, z);
    const double rhs1 = std::pow(1.0 + delta, z - 1.0) * az +
                        std::pow(1.0 + 1.0 / delta, z - 1.0) * bz;
    const double rhs2 =
        (1.0 + delta) * az + std::pow(3.0 * z / delta, z - 1.0) * bz;
    auto leq = [](double l, double r) {
        return l <= r * (1.0 + 1e-12) + 1e-300;
    };
    return {leq(lhs, rhs1), leq(lhs, rhs2)};
}

}  // namespace rkc
