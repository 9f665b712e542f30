#pragma once

#include <cstdint>

#include "rkc/coreset.hpp"
#include "rkc/types.hpp"

namespace rkc {

/// N points drawn uniformly without replacement, each carrying an equal
/// share of the total weight.
WeightedCoreset uniform_sampling_coreset(const Dataset& X, std::size_t N,
                                         std::uint64_t seed);

/// The m furthest points from a tri-criteria seed solution kept with their
/// own weight, plus N-m uniform samples from the rest re-weighted to
/// conserve the remaining mass.
WeightedCoreset outlier_aware_uniform(const Dataset& X, int k, double z,
                                      std::size_t m, std::size_t N,
                                      std::uint64_t seed);

/// Importance sampling from a per-point sensitivity proxy
///   sigma(x) = w(x) dist^z(x,C*) / cost + w(x) / cluster_mass(x)
/// (outliers get sigma = 1). N independent draws with probability
/// proportional to sigma, weighted w(x)/(N p(x)); repeated draws of a
/// point merge by summing weights, so the result is a subset of X and its
/// total weight matches X in expectation.
WeightedCoreset sensitivity_sampling_coreset(const Dataset& X, int k, double z,
                                             std::size_t m, std::size_t N,
                                             std::uint64_t seed);

}  // namespace rkc
