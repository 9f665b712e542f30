#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rkc/coreset.hpp"
#include "rkc/solvers.hpp"
#include "rkc/types.hpp"

namespace rkc {

enum class Method { Ours, US, OAUS, SS };
const char* method_name(Method m);
Method method_from_name(const std::string& s);
inline constexpr Method kAllMethods[] = {Method::Ours, Method::US,
                                         Method::OAUS, Method::SS};

/// Outlier budgets the harness evaluates: {0, ceil(m/2), m}, deduplicated.
std::vector<double> eval_budgets(double m);

/// k points drawn uniformly from the axis-aligned bounding box of X,
/// `count` sets in total.
std::vector<CenterSet> random_center_sets(const Dataset& X, int k, int count,
                                          std::uint64_t seed);

/// Full-data costs, one row per center set, one column per outlier budget.
/// Sweeps precompute this once and reuse it across methods and repetitions.
struct CostTable {
    std::vector<double> budgets;
    std::vector<std::vector<double>> cost;  // [center set][budget]
};
CostTable full_cost_table(const Dataset& X,
                          const std::vector<CenterSet>& centers, double z,
                          std::vector<double> budgets);

/// Relative objective discrepancy for one center set at each budget;
/// an entry is NaN when the full-data cost is zero (skipped).
struct ErrorSample {
    int center_set_id = 0;
    std::vector<double> errors;  // parallel to the budget list
};

struct EmpiricalError {
    double max_error = 0.0;               // at the full budget m
    std::vector<double> budgets;
    std::vector<double> max_error_per_budget;
    std::vector<ErrorSample> samples;
    int skipped = 0;                      // (center set, budget) pairs with zero cost
};

/// Maximum over the center sets of |cost_t(X,C) - cost_t(S,C)| / cost_t(X,C),
/// measured at every budget in eval_budgets(m); the headline value is the
/// one at t = m. Both sides go through the same robust-cost code path.
EmpiricalError max_empirical_error(const Dataset& X, const WeightedCoreset& S,
                                   const std::vector<CenterSet>& centers,
                                   double z, double m,
                                   const CostTable* full = nullptr);

struct SweepRow {
    double param = 0.0;  // N or m
    double mean_error = 0.0;
    double max_error = 0.0;
    double variance = 0.0;
    int repetitions = 0;
};

struct SweepOptions {
    int center_sets = 500;
    int repetitions = 20;
    double c_t = 1.0;
    double beta = 2.0;
    double gamma = 2.0;
};

/// Builds a coreset with the given method; `ours` runs the full pipeline,
/// the rest are the sampling baselines.
WeightedCoreset build_by_method(Method method, const Dataset& X, int k,
                                double z, std::size_t m, std::size_t N,
                                std::uint64_t seed, const SweepOptions& opt);

/// Size-vs-error table per method over the listed target sizes.
std::map<Method, std::vector<SweepRow>> size_error_sweep(
    const Dataset& X, int k, double z, std::size_t m,
    const std::vector<std::size_t>& sizes, std::uint64_t seed,
    const SweepOptions& opt);

/// Error table per method with varying m and fixed N - m.
std::map<Method, std::vector<SweepRow>> outlier_error_sweep(
    const Dataset& X, int k, double z, const std::vector<std::size_t>& m_values,
    std::size_t fixed_extra, std::uint64_t seed, const SweepOptions& opt);

enum class Solver { LL, LS };
const char* solver_name(Solver s);
Solver solver_from_name(const std::string& s);

/// Solve on the full data and on a freshly built coreset, costing both
/// center sets on the full data. cost_prime is the coreset-solved cost,
/// t_c/t_s/t_x the build, coreset-solve, and full-solve wall times.
struct SpeedupReport {
    Solver solver = Solver::LL;
    double cost = 0.0;
    double cost_prime = 0.0;
    double t_c = 0.0;
    double t_s = 0.0;
    double t_x = 0.0;
    std::size_t coreset_size = 0;
    int iterations_full = 0;
    int iterations_coreset = 0;
};

struct SpeedupOptions {
    int candidates = 100;  // LS pool size
    int max_iters = 100;
    double tol = 1e-6;
    double c_t = 1.0;
};

SpeedupReport speedup_benchmark(const Dataset& X, int k, double z,
                                std::size_t m, std::size_t N, Solver solver,
                                std::uint64_t seed, const SpeedupOptions& opt);

/// Outlier-count suggestion from the sorted distance curve of a vanilla
/// (m = 0) clustering: the rank in the top decile with the largest
/// consecutive distance ratio. Returns 0 when no ratio exceeds 1.
struct OutlierSuggestion {
    std::size_t m = 0;
    std::vector<double> sorted_distances;  // decreasing
};

OutlierSuggestion suggest_outlier_count(const Dataset& X, int k,
                                        std::uint64_t seed);

}  // namespace rkc
