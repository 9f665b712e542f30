#pragma once

#include <cmath>
#include <cstdint>
#include <span>

#include "rkc/types.hpp"

// Data-parallel inner loops, each with a serial reference implementation.
// The OpenMP variants compute every element independently, so for any
// thread count they produce output bit-identical to the serial reference;
// tests and the benchmark target compare the two.
namespace rkc::kernels {

/// Caps the OpenMP worker count (no-op when built without OpenMP).
void set_threads(int n);
int max_threads();

/// dist[i] = Euclidean distance from X.point(i) to its nearest center,
/// idx[i] = index of that center (smallest index wins ties).
void nearest_center_serial(const Dataset& X, const CenterSet& C,
                           std::span<double> dist, std::span<int> idx);
void nearest_center_omp(const Dataset& X, const CenterSet& C,
                        std::span<double> dist, std::span<int> idx);
void nearest_center(const Dataset& X, const CenterSet& C,
                    std::span<double> dist, std::span<int> idx);

/// acc[i] = min(acc[i], dist(X.point(i), c)^z). Seeding inner loop.
void min_powdist_update_serial(const Dataset& X, PointView c, double z,
                               std::span<double> acc);
void min_powdist_update_omp(const Dataset& X, PointView c, double z,
                            std::span<double> acc);
void min_powdist_update(const Dataset& X, PointView c, double z,
                        std::span<double> acc);

/// Pairwise (cascade) summation; fixed association order makes the result
/// independent of thread count and reproducible bit-for-bit.
double pairwise_sum(std::span<const double> v);

double squared_distance(PointView a, PointView b);

/// d^z with fast paths for z in {1, 2, 3}.
inline double pow_z(double d, double z) {
    if (z == 1.0) return d;
    if (z == 2.0) return d * d;
    if (z == 3.0) return d * d * d;
    return std::pow(d, z);
}

}  // namespace rkc::kernels
