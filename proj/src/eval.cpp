#include "rkc/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "rkc/approx.hpp"
#include "rkc/baselines.hpp"
#include "rkc/cost.hpp"
#include "rkc/kernels.hpp"
#include "rkc/rng.hpp"

namespace rkc {

const char* method_name(Method m) {
    switch (m) {
        case Method::Ours: return "ours";
        case Method::US: return "us";
        case Method::OAUS: return "oaus";
        case Method::SS: return "ss";
    }
    return "unknown";
}

Method method_from_name(const std::string& s) {
    if (s == "ours") return Method::Ours;
    if (s == "us") return Method::US;
    if (s == "oaus") return Method::OAUS;
    if (s == "ss") return Method::SS;
    throw std::invalid_argument("unknown method: " + s);
}

const char* solver_name(Solver s) {
    return s == Solver::LL ? "ll" : "ls";
}

Solver solver_from_name(const std::string& s) {
    if (s == "ll" || s == "LL") return Solver::LL;
    if (s == "ls" || s == "LS") return Solver::LS;
    throw std::invalid_argument("unknown solver: " + s);
}

std::vector<double> eval_budgets(double m) {
    std::vector<double> ts{0.0, std::ceil(m / 2.0), m};
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

std::vector<CenterSet> random_center_sets(const Dataset& X, int k, int count,
                                          std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    if (X.empty()) throw std::invalid_argument("empty dataset");
    const std::size_t d = X.dim;
    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < X.size(); ++i) {
        const PointView p = X.point(i);
        for (std::size_t j = 0; j < d; ++j) {
            lo[j] = std::min(lo[j], p[j]);
            hi[j] = std::max(hi[j], p[j]);
        }
    }
    Rng rng(derive_seed(seed, 0xce27ULL));
    std::vector<CenterSet> out(count);
    for (int c = 0; c < count; ++c) {
        out[c].dim = d;
        for (int j = 0; j < k; ++j) {
            Point p(d);
            for (std::size_t t = 0; t < d; ++t)
                p[t] = lo[t] + rng.uniform() * (hi[t] - lo[t]);
            out[c].add(p);
        }
    }
    return out;
}

CostTable full_cost_table(const Dataset& X,
                          const std::vector<CenterSet>& centers, double z,
                          std::vector<double> budgets) {
    CostTable table;
    table.budgets = std::move(budgets);
    table.cost.resize(centers.size());
    const std::int64_t nc = static_cast<std::int64_t>(centers.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t c = 0; c < nc; ++c)
        table.cost[c] = robust_cost_multi(X, centers[c], z, table.budgets);
    return table;
}

EmpiricalError max_empirical_error(const Dataset& X, const WeightedCoreset& S,
                                   const std::vector<CenterSet>& centers,
                                   double z, double m, const CostTable* full) {
    if (centers.empty()) throw std::invalid_argument("no center sets");
    EmpiricalError ee;
    ee.budgets = eval_budgets(m);

    CostTable local;
    if (full == nullptr) {
        local = full_cost_table(X, centers, z, ee.budgets);
        full = &local;
    } else if (full->budgets != ee.budgets) {
        throw std::invalid_argument("cost table budgets mismatch");
    }

    const std::size_t nb = ee.budgets.size();
    ee.samples.resize(centers.size());
    const std::int64_t nc = static_cast<std::int64_t>(centers.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t c = 0; c < nc; ++c) {
        const std::vector<double> cs =
            robust_cost_multi(S.points, centers[c], z, ee.budgets);
        ErrorSample& sample = ee.samples[c];
        sample.center_set_id = static_cast<int>(c);
        sample.errors.resize(nb);
        for (std::size_t t = 0; t < nb; ++t) {
            const double cx = full->cost[c][t];
            sample.errors[t] =
                cx == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                          : std::abs(cx - cs[t]) / cx;
        }
    }

    ee.max_error_per_budget.assign(nb, 0.0);
    for (const ErrorSample& s : ee.samples)
        for (std::size_t t = 0; t < nb; ++t) {
            if (std::isnan(s.errors[t]))
                ++ee.skipped;
            else
                ee.max_error_per_budget[t] =
                    std::max(ee.max_error_per_budget[t], s.errors[t]);
        }
    ee.max_error = ee.max_error_per_budget.back();
    return ee;
}

WeightedCoreset build_by_method(Method method, const Dataset& X, int k,
                                double z, std::size_t m, std::size_t N,
                                std::uint64_t seed, const SweepOptions& opt) {
    switch (method) {
        case Method::Ours: {
            CoresetParams p;
            p.k = k;
            p.z = z;
            p.m = m;
            p.target_size = N;
            p.seed = seed;
            p.beta = opt.beta;
            p.gamma = opt.gamma;
            p.c_t = opt.c_t;
            return build_coreset(X, p).first;
        }
        case Method::US:
            return uniform_sampling_coreset(X, N, seed);
        case Method::OAUS:
            return outlier_aware_uniform(X, k, z, m, N, seed);
        case Method::SS:
            return sensitivity_sampling_coreset(X, k, z, m, N, seed);
    }
    throw std::logic_error("unreachable");
}

namespace {

SweepRow aggregate(double param, const std::vector<double>& errs) {
    SweepRow row;
    row.param = param;
    row.repetitions = static_cast<int>(errs.size());
    row.max_error = 0.0;
    row.mean_error = kernels::pairwise_sum(errs) / errs.size();
    for (double e : errs) row.max_error = std::max(row.max_error, e);
    double var = 0.0;
    if (errs.size() > 1) {
        std::vector<double> sq(errs.size());
        for (std::size_t i = 0; i < errs.size(); ++i) {
            const double d = errs[i] - row.mean_error;
            sq[i] = d * d;
        }
        var = kernels::pairwise_sum(sq) / (errs.size() - 1);
    }
    row.variance = var;
    return row;
}

}  // namespace

std::map<Method, std::vector<SweepRow>> size_error_sweep(
    const Dataset& X, int k, double z, std::size_t m,
    const std::vector<std::size_t>& sizes, std::uint64_t seed,
    const SweepOptions& opt) {
    std::vector<std::size_t> ordered = sizes;
    std::sort(ordered.begin(), ordered.end());

    const std::vector<CenterSet> centers =
        random_center_sets(X, k, opt.center_sets, derive_seed(seed, 0xc0deULL));
    const CostTable table = full_cost_table(
        X, centers, z, eval_budgets(static_cast<double>(m)));

    std::map<Method, std::vector<SweepRow>> out;
    for (Method method : kAllMethods) {
        std::vector<SweepRow>& rows = out[method];
        for (std::size_t N : ordered) {
            std::vector<double> errs;
            errs.reserve(opt.repetitions);
            for (int rep = 0; rep < opt.repetitions; ++rep) {
                const std::uint64_t s = derive_seed(
                    seed, static_cast<std::uint64_t>(method), N,
                    static_cast<std::uint64_t>(rep));
                const WeightedCoreset cs =
                    build_by_method(method, X, k, z, m, N, s, opt);
                errs.push_back(max_empirical_error(X, cs, centers, z,
                                                   static_cast<double>(m),
                                                   &table)
                                   .max_error);
            }
            rows.push_back(aggregate(static_cast<double>(N), errs));
        }
    }
    return out;
}

std::map<Method, std::vector<SweepRow>> outlier_error_sweep(
    const Dataset& X, int k, double z, const std::vector<std::size_t>& m_values,
    std::size_t fixed_extra, std::uint64_t seed, const SweepOptions& opt) {
    std::vector<std::size_t> ordered = m_values;
    std::sort(ordered.begin(), ordered.end());

    const std::vector<CenterSet> centers =
        random_center_sets(X, k, opt.center_sets, derive_seed(seed, 0xc0deULL));

    std::map<Method, std::vector<SweepRow>> out;
    for (Method method : kAllMethods) out[method] = {};
    for (std::size_t m : ordered) {
        const CostTable table = full_cost_table(
            X, centers, z, eval_budgets(static_cast<double>(m)));
        const std::size_t N = m + fixed_extra;
        for (Method method : kAllMethods) {
            std::vector<double> errs;
            errs.reserve(opt.repetitions);
            for (int rep = 0; rep < opt.repetitions; ++rep) {
                const std::uint64_t s = derive_seed(
                    seed, static_cast<std::uint64_t>(method), m,
                    static_cast<std::uint64_t>(rep));
                const WeightedCoreset cs =
                    build_by_method(method, X, k, z, m, N, s, opt);
                errs.push_back(max_empirical_error(X, cs, centers, z,
                                                   static_cast<double>(m),
                                                   &table)
                                   .max_error);
            }
            out[method].push_back(aggregate(static_cast<double>(m), errs));
        }
    }
    return out;
}

SpeedupReport speedup_benchmark(const Dataset& X, int k, double z,
                                std::size_t m, std::size_t N, Solver solver,
                                std::uint64_t seed, const SpeedupOptions& opt) {
    SpeedupReport rep;
    rep.solver = solver;

    CoresetParams cp;
    cp.k = k;
    cp.z = z;
    cp.m = m;
    cp.target_size = N;
    cp.seed = derive_seed(seed, 0xb1dULL);
    cp.c_t = opt.c_t;
    auto [coreset, build_rep] = build_coreset(X, cp);
    rep.t_c = build_rep.build_seconds;
    rep.coreset_size = coreset.size();

    const double md = static_cast<double>(m);
    auto run = [&](const Dataset& input, std::uint64_t s) -> SolveResult {
        if (solver == Solver::LL) {
            const auto t0 = std::chrono::steady_clock::now();
            const CenterSet init =
                robust_seed(input, k, md, z, derive_seed(s, 0x11ULL));
            SolveResult r =
                lloyd_with_outliers(input, init, md, z, opt.max_iters, opt.tol);
            r.wall_seconds = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
            return r;
        }
        const std::size_t pool =
            std::min<std::size_t>(opt.candidates, input.size());
        const auto t0 = std::chrono::steady_clock::now();
        const CenterSet cand =
            candidate_pool(input, pool, derive_seed(s, 0x12ULL));
        SolveResult r = local_search_robust_median(input, cand, k, md, z,
                                                   opt.max_iters);
        r.wall_seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
        return r;
    };

    const SolveResult full = run(X, derive_seed(seed, 0xf0ULL));
    rep.t_x = full.wall_seconds;
    rep.cost = full.cost_on_input;
    rep.iterations_full = full.iterations;

    const SolveResult on_core = run(coreset.points, derive_seed(seed, 0xf1ULL));
    rep.t_s = on_core.wall_seconds;
    rep.cost_prime = robust_cost(X, on_core.centers, z, md).cost;
    rep.iterations_coreset = on_core.iterations;
    return rep;
}

OutlierSuggestion suggest_outlier_count(const Dataset& X, int k,
                                        std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    OutlierSuggestion out;
    if (X.empty()) return out;

    // vanilla clustering (no outliers) to anchor the distance curve
    const TriCriteriaSolution tri = tri_criteria_approx(
        X, std::min<int>(k, static_cast<int>(X.size())), 2.0, 0.0, 1.0, 1.0,
        derive_seed(seed, 0x5347ULL));
    const SolveResult sol =
        lloyd_with_outliers(X, tri.centers, 0.0, 2.0, 100, 1e-6);

    std::vector<double> dist(X.size());
    std::vector<int> idx(X.size());
    kernels::nearest_center(X, sol.centers, dist, idx);
    std::sort(dist.begin(), dist.end(), std::greater<>());
    out.sorted_distances = dist;

    const std::size_t n = dist.size();
    if (n < 2) return out;
    const std::size_t limit = std::max<std::size_t>(1, n / 10);
    double best_ratio = 0.0;
    std::size_t best_i = 0;
    for (std::size_t i = 1; i <= limit && i < n; ++i) {
        const double a = dist[i - 1];
        const double b = dist[i];
        if (a == 0.0) break;  // curve is flat zero from here on
        const double ratio =
            b == 0.0 ? std::numeric_limits<double>::infinity() : a / b;
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best_i = i;
        }
    }
    out.m = best_ratio > 1.0 ? best_i : 0;
    return out;
}

}  // namespace rkc
