#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rkc/types.hpp"

namespace rkc {

/// Result of removing exactly `m` units of the furthest weight and costing
/// the remainder. If the removal splits a point, `boundary_id` names it and
/// `boundary_removed_weight` is the fraction of its weight that was dropped.
struct RobustCostResult {
    double cost = 0.0;
    double outlier_mass_removed = 0.0;
    std::optional<std::int64_t> boundary_id;
    double boundary_removed_weight = 0.0;
};

/// Argmin center index (smallest index on ties) and Euclidean distance.
std::pair<std::size_t, double> nearest_center(PointView p, const CenterSet& C);

/// Sum of w(x) * dist(x, C)^z over all points.
double cost_vanilla(const Dataset& X, const CenterSet& C, double z);

/// Clustering cost after discarding the m furthest units of weight.
/// Ties at the removal boundary drop the larger id first; one point may be
/// split fractionally so that exactly m units go. For unit weights and
/// integer m this is the plain discard-the-m-furthest-points objective.
RobustCostResult robust_cost(const Dataset& X, const CenterSet& C, double z,
                             double m);

/// robust_cost at several outlier budgets, sharing one distance pass and
/// one sort. Same semantics, element for element, as calling robust_cost.
std::vector<double> robust_cost_multi(const Dataset& X, const CenterSet& C,
                                      double z, std::span<const double> ms);

/// Same removal/costing logic on caller-supplied per-point distances.
/// Solvers use this to cost candidate center sets without rebuilding
/// datasets.
RobustCostResult robust_cost_from_rows(std::span<const double> dist,
                                       std::span<const double> weight,
                                       std::span<const std::int64_t> id,
                                       double z, double m);

/// Literal minimum over all size-m outlier subsets. Test oracle: requires
/// unit weights, integer m, and |X| <= 12, and refuses anything larger.
double brute_force_robust_cost(const Dataset& X, const CenterSet& C, double z,
                               int m);

/// The same objective evaluated through the integral identity
///   cost = \int_0^inf z u^(z-1) (W - m - w(Balls(C,u) cap X))^+ du,
/// summed exactly segment-by-segment between sorted distance breakpoints.
/// quadrature_steps subdivides each segment (the sum telescopes, so the
/// value is exact for every z either way).
double robust_cost_integral(const Dataset& X, const CenterSet& C, double z,
                            double m, int quadrature_steps);

/// Truth of the two generalized triangle inequalities
///   (a+b)^z <= (1+delta)^(z-1) a^z + (1+1/delta)^(z-1) b^z
///   (a+b)^z <= (1+delta) a^z + (3z/delta)^(z-1) b^z
/// evaluated with a 1e-12 relative slack to absorb rounding.
std::pair<bool, bool> check_triangle_lemma(double a, double b, double delta,
                                           double z);

}  // namespace rkc
