#include "rkc/kernels.hpp"

#include <cmath>
#include <limits>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace rkc::kernels {

void set_threads(int n) {
#if defined(_OPENMP)
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

int max_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

double squared_distance(PointView a, PointView b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return s;
}

namespace {

// Shared per-point body: scan all centers, keep the smallest squared
// distance (strict < keeps the first center on ties).
inline void nearest_one(const Dataset& X, const CenterSet& C, std::size_t i,
                        double& dist_out, int& idx_out) {
    const PointView p = X.point(i);
    double best = std::numeric_limits<double>::infinity();
    int best_j = 0;
    for (std::size_t j = 0; j < C.size(); ++j) {
        const double d2 = squared_distance(p, C.center(j));
        if (d2 < best) {
            best = d2;
            best_j = static_cast<int>(j);
        }
    }
    dist_out = std::sqrt(best);
    idx_out = best_j;
}

inline double powdist_one(const Dataset& X, PointView c, double z, std::size_t i) {
    return pow_z(std::sqrt(squared_distance(X.point(i), c)), z);
}

}  // namespace

void nearest_center_serial(const Dataset& X, const CenterSet& C,
                           std::span<double> dist, std::span<int> idx) {
    require_same_dim(X, C);
    if (C.empty()) throw std::invalid_argument("empty center set");
    for (std::size_t i = 0; i < X.size(); ++i)
        nearest_one(X, C, i, dist[i], idx[i]);
}

void nearest_center_omp(const Dataset& X, const CenterSet& C,
                        std::span<double> dist, std::span<int> idx) {
    require_same_dim(X, C);
    if (C.empty()) throw std::invalid_argument("empty center set");
    const std::int64_t n = static_cast<std::int64_t>(X.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t i = 0; i < n; ++i)
        nearest_one(X, C, static_cast<std::size_t>(i), dist[i], idx[i]);
}

void nearest_center(const Dataset& X, const CenterSet& C,
                    std::span<double> dist, std::span<int> idx) {
    nearest_center_omp(X, C, dist, idx);
}

void min_powdist_update_serial(const Dataset& X, PointView c, double z,
                               std::span<double> acc) {
    for (std::size_t i = 0; i < X.size(); ++i)
        acc[i] = std::min(acc[i], powdist_one(X, c, z, i));
}

void min_powdist_update_omp(const Dataset& X, PointView c, double z,
                            std::span<double> acc) {
    const std::int64_t n = static_cast<std::int64_t>(X.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t i = 0; i < n; ++i)
        acc[i] = std::min(acc[i], powdist_one(X, c, z, static_cast<std::size_t>(i)));
}

void min_powdist_update(const Dataset& X, PointView c, double z,
                        std::span<double> acc) {
    min_powdist_update_omp(X, c, z, acc);
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 32) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace rkc::kernels

namespace rkc {

double Dataset::total_weight() const {
    return kernels::pairwise_sum(weights);
}

}  // namespace rkc
