// Command-line front end: data ingestion (CSV or synthetic), then one
// subcommand per pipeline operation. Every output file embeds the run
// config and version; rerunning with the same config reproduces numeric
// outputs byte for byte (timings live in report.json only).

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "CLI11.hpp"

#include "rkc/approx.hpp"
#include "rkc/baselines.hpp"
#include "rkc/coreset.hpp"
#include "rkc/cost.hpp"
#include "rkc/eval.hpp"
#include "rkc/io.hpp"
#include "rkc/kernels.hpp"
#include "rkc/rng.hpp"
#include "rkc/solvers.hpp"
#include "rkc/version.hpp"

namespace {

namespace fs = std::filesystem;
using rkc::json;

struct CommonOpts {
    std::string input_path;
    std::string columns;
    std::size_t subsample = 0;  // 0 = keep everything
    bool standardize = false;

    bool use_synth = false;
    rkc::SynthSpec synth;

    int k = 5;
    double z = 1.0;
    std::string m_str = "0";
    std::uint64_t seed = 1;
    std::string out_dir;
    int threads = 0;
};

void add_common(CLI::App* sub, CommonOpts& o) {
    sub->add_option("input", o.input_path, "input CSV file (header + rows)");
    sub->add_option("--columns", o.columns,
                    "feature columns, comma-separated names or 0-based indices "
                    "(default: all)");
    sub->add_option("--subsample", o.subsample,
                    "uniform subsample without replacement to this many rows");
    sub->add_flag("--standardize", o.standardize,
                  "per-column standardization of the selected features");

    sub->add_flag("--synth", o.use_synth, "generate a synthetic dataset");
    sub->add_option("--synth-clusters", o.synth.clusters, "mixture components");
    sub->add_option("--synth-per", o.synth.points_per_cluster,
                    "points per component");
    sub->add_option("--synth-dim", o.synth.dim, "dimension");
    sub->add_option("--synth-sep", o.synth.separation,
                    "scale of the component center layout");
    sub->add_option("--synth-outliers", o.synth.outliers, "planted outliers");
    sub->add_option("--synth-odist", o.synth.outlier_distance,
                    "planted outlier radius, multiple of the inlier radius");

    sub->add_option("--k", o.k, "number of centers");
    sub->add_option("--z", o.z,
                    "cost exponent (median: z=1, means: z=2)");
    sub->add_option("--m", o.m_str,
                    "number of outliers, or 'auto' to pick from the distance "
                    "distribution");
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("--out", o.out_dir,
                    "output directory (default: $RKC_OUT_DIR or ./rkc_out)");
    sub->add_option("--threads", o.threads, "cap worker threads");
}

std::string resolve_out_dir(const CommonOpts& o) {
    if (!o.out_dir.empty()) return o.out_dir;
    if (const char* env = std::getenv("RKC_OUT_DIR"); env && *env) return env;
    return "rkc_out";
}

rkc::Dataset load_data(CommonOpts& o) {
    if (o.use_synth) {
        o.synth.seed = rkc::derive_seed(o.seed, 0x5e7aULL);
        return rkc::make_synthetic(o.synth).data;
    }
    if (o.input_path.empty())
        throw std::runtime_error("provide an input CSV or --synth");
    std::optional<std::size_t> sub;
    if (o.subsample > 0) sub = o.subsample;
    return rkc::load_csv(o.input_path, o.columns, sub,
                         rkc::derive_seed(o.seed, 0x5ab5ULL), o.standardize);
}

std::size_t resolve_m(const CommonOpts& o, const rkc::Dataset& X) {
    if (o.m_str == "auto") {
        const auto sug = rkc::suggest_outlier_count(
            X, o.k, rkc::derive_seed(o.seed, 0x4afeULL));
        std::printf("suggested m = %zu\n", sug.m);
        return sug.m;
    }
    const long v = std::stol(o.m_str);
    if (v < 0) throw std::runtime_error("m must be >= 0");
    return static_cast<std::size_t>(v);
}

json config_json(const std::string& command, const CommonOpts& o,
                 std::size_t m_resolved, const std::string& out_dir) {
    json input;
    if (o.use_synth) {
        input["synth"] = {{"clusters", o.synth.clusters},
                          {"points_per_cluster", o.synth.points_per_cluster},
                          {"dim", o.synth.dim},
                          {"separation", o.synth.separation},
                          {"outliers", o.synth.outliers},
                          {"outlier_distance", o.synth.outlier_distance}};
    } else {
        input["path"] = o.input_path;
        input["columns"] = o.columns;
        if (o.subsample > 0) input["subsample"] = o.subsample;
        input["standardize"] = o.standardize;
    }
    return {{"command", command}, {"input", input},    {"k", o.k},
            {"z", o.z},           {"m", m_resolved},   {"m_requested", o.m_str},
            {"seed", o.seed},     {"threads", o.threads}, {"out", out_dir}};
}

json centers_to_json(const rkc::CenterSet& C) {
    json arr = json::array();
    for (std::size_t j = 0; j < C.size(); ++j) {
        json c = json::array();
        for (double v : C.center(j)) c.push_back(v);
        arr.push_back(std::move(c));
    }
    return arr;
}

std::vector<std::size_t> parse_size_list(const std::string& s) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(std::stoul(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    if (out.empty()) throw std::runtime_error("empty size list");
    return out;
}

std::vector<std::vector<std::string>> sweep_rows(
    const std::map<rkc::Method, std::vector<rkc::SweepRow>>& sweep,
    const char* param_name) {
    (void)param_name;
    std::vector<std::vector<std::string>> rows;
    for (const auto& [method, table] : sweep)
        for (const rkc::SweepRow& r : table)
            rows.push_back({rkc::method_name(method),
                            rkc::format_double(r.param),
                            rkc::format_double(r.mean_error),
                            rkc::format_double(r.max_error),
                            rkc::format_double(r.variance),
                            std::to_string(r.repetitions)});
    return rows;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"coreset construction and evaluation for robust clustering "
                 "with outliers"};
    app.require_subcommand(1);

    CommonOpts o;

    // coreset
    auto* cmd_coreset = app.add_subcommand(
        "coreset", "build a coreset and write it as CSV");
    std::string method_str = "ours";
    std::size_t target_n = 0;
    double c_t = 1.0;
    bool dump_decomposition = false;
    add_common(cmd_coreset, o);
    cmd_coreset->add_option("--n", target_n, "target coreset size")->required();
    cmd_coreset->add_option("--method", method_str, "ours|us|oaus|ss");
    cmd_coreset->add_option("--ct", c_t, "threshold constant c_t in t = c_t/(N-m)");
    cmd_coreset->add_flag("--dump-decomposition", dump_decomposition,
                          "also write decomposition.json (ours only)");

    // eval
    auto* cmd_eval = app.add_subcommand(
        "eval", "empirical error of one coreset over random center sets");
    int center_count = 500;
    add_common(cmd_eval, o);
    cmd_eval->add_option("--n", target_n, "target coreset size")->required();
    cmd_eval->add_option("--method", method_str, "ours|us|oaus|ss");
    cmd_eval->add_option("--centers", center_count, "number of center sets");
    cmd_eval->add_option("--ct", c_t, "threshold constant");

    // sweep-size
    auto* cmd_ssize = app.add_subcommand(
        "sweep-size", "size-vs-error tables for every method");
    std::string sizes_str;
    int reps = 20;
    add_common(cmd_ssize, o);
    cmd_ssize->add_option("--sizes", sizes_str, "comma-separated target sizes")
        ->required();
    cmd_ssize->add_option("--reps", reps, "repetitions per point");
    cmd_ssize->add_option("--centers", center_count, "number of center sets");
    cmd_ssize->add_option("--ct", c_t, "threshold constant");

    // sweep-m
    auto* cmd_sm = app.add_subcommand(
        "sweep-m", "error tables with varying m at fixed N-m");
    std::string mvals_str;
    std::size_t fixed_extra = 800;
    add_common(cmd_sm, o);
    cmd_sm->add_option("--m-values", mvals_str, "comma-separated m values")
        ->required();
    cmd_sm->add_option("--extra", fixed_extra, "fixed N-m");
    cmd_sm->add_option("--reps", reps, "repetitions per point");
    cmd_sm->add_option("--centers", center_count, "number of center sets");
    cmd_sm->add_option("--ct", c_t, "threshold constant");

    // solve
    auto* cmd_solve = app.add_subcommand(
        "solve", "run a solver (ll or ls) on the input data");
    std::string solver_str = "ll";
    int candidates = 100;
    int max_iters = 100;
    double tol = 1e-6;
    add_common(cmd_solve, o);
    cmd_solve->add_option("--solver", solver_str, "ll|ls");
    cmd_solve->add_option("--candidates", candidates, "ls candidate pool size");
    cmd_solve->add_option("--max-iters", max_iters, "iteration cap");
    cmd_solve->add_option("--tol", tol, "relative convergence tolerance");

    // bench-speedup
    auto* cmd_bench = app.add_subcommand(
        "bench-speedup", "time a solver on the full data vs on a coreset");
    add_common(cmd_bench, o);
    cmd_bench->add_option("--n", target_n, "coreset target size")->required();
    cmd_bench->add_option("--solver", solver_str, "ll|ls");
    cmd_bench->add_option("--candidates", candidates, "ls candidate pool size");
    cmd_bench->add_option("--max-iters", max_iters, "iteration cap");
    cmd_bench->add_option("--tol", tol, "relative convergence tolerance");
    cmd_bench->add_option("--ct", c_t, "threshold constant");

    // suggest-m
    auto* cmd_sug = app.add_subcommand(
        "suggest-m", "suggest the outlier count from the distance curve");
    add_common(cmd_sug, o);

    CLI11_PARSE(app, argc, argv);

    rkc::kernels::set_threads(o.threads);
    const std::string out_dir = resolve_out_dir(o);
    fs::create_directories(out_dir);
    auto out_path = [&](const char* name) {
        return (fs::path(out_dir) / name).string();
    };

    rkc::Dataset X = load_data(o);
    if (X.size() < static_cast<std::size_t>(o.k))
        throw std::runtime_error("dataset smaller than k");

    if (cmd_sug->parsed()) {
        const json cfg = config_json("suggest-m", o, 0, out_dir);
        const auto sug = rkc::suggest_outlier_count(
            X, o.k, rkc::derive_seed(o.seed, 0x4afeULL));
        std::vector<std::vector<std::string>> rows;
        const std::size_t n = sug.sorted_distances.size();
        for (std::size_t i = 0; i < n; ++i)
            rows.push_back(
                {rkc::format_double(n > 1 ? static_cast<double>(i) /
                                                static_cast<double>(n - 1)
                                          : 0.0),
                 rkc::format_double(sug.sorted_distances[i])});
        rkc::write_table_csv(out_path("curve.csv"),
                             {"rescaled_rank", "distance"}, rows, cfg,
                             rkc::kVersion);
        rkc::write_json(out_path("suggestion.json"),
                        {{"config", cfg},
                         {"version", rkc::kVersion},
                         {"m", sug.m}});
        std::printf("suggested m = %zu\n", sug.m);
        return 0;
    }

    const std::size_t m = resolve_m(o, X);
    const rkc::Method method = rkc::method_from_name(method_str);
    rkc::SweepOptions sweep_opt;
    sweep_opt.center_sets = center_count;
    sweep_opt.repetitions = reps;
    sweep_opt.c_t = c_t;

    if (cmd_coreset->parsed()) {
        json cfg = config_json("coreset", o, m, out_dir);
        cfg["n"] = target_n;
        cfg["method"] = method_str;
        cfg["c_t"] = c_t;
        const std::uint64_t bseed = rkc::derive_seed(o.seed, 0xc5ULL);
        if (method == rkc::Method::Ours) {
            rkc::CoresetParams p;
            p.k = o.k;
            p.z = o.z;
            p.m = m;
            p.target_size = target_n;
            p.seed = bseed;
            p.c_t = c_t;
            auto [cs, rep] = rkc::build_coreset(X, p);
            rkc::write_coreset_csv(out_path("coreset.csv"), cs, cfg,
                                   rkc::kVersion);
            rkc::write_json(
                out_path("build_report.json"),
                {{"config", cfg},
                 {"version", rkc::kVersion},
                 {"target_size", rep.target_size},
                 {"actual_size", rep.actual_size},
                 {"threshold_fraction", rep.threshold_fraction},
                 {"ring_sample_size", rep.ring_sample_size},
                 {"outlier_count", rep.outlier_count},
                 {"cluster_count", rep.cluster_count},
                 {"heavy_ring_count", rep.heavy_ring_count},
                 {"group_count", rep.group_count},
                 {"degenerate_group_count", rep.degenerate_group_count},
                 {"total_weight", rep.total_weight},
                 {"tri_achieved_cost", rep.tri_achieved_cost},
                 {"saturated", rep.saturated},
                 {"build_seconds", rep.build_seconds}});
            if (dump_decomposition) {
                // rebuild the decomposition the same way the pipeline does
                const auto tri = rkc::tri_criteria_approx(
                    X, p.k, p.z, static_cast<double>(p.m), p.beta, p.gamma,
                    rkc::derive_seed(p.seed, 0x5eedULL));
                const auto out = rkc::find_outliers(X, tri.centers,
                                                    static_cast<double>(p.m));
                std::vector<char> is_out(X.size(), 0);
                for (std::size_t r : out.rows) is_out[r] = 1;
                std::vector<std::size_t> inl;
                for (std::size_t i = 0; i < X.size(); ++i)
                    if (!is_out[i]) inl.push_back(i);
                const rkc::Dataset inliers = X.subset(inl);
                const double tf =
                    target_n > m
                        ? std::min(1.0, c_t / static_cast<double>(target_n - m))
                        : 1.0;
                const auto dec = rkc::decompose(inliers, tri.centers, o.z, tf);
                json dj = rkc::decomposition_to_json(dec, inliers);
                dj["config"] = cfg;
                dj["version"] = rkc::kVersion;
                rkc::write_json(out_path("decomposition.json"), dj);
            }
        } else {
            const rkc::WeightedCoreset cs = rkc::build_by_method(
                method, X, o.k, o.z, m, target_n, bseed, sweep_opt);
            rkc::write_coreset_csv(out_path("coreset.csv"), cs, cfg,
                                   rkc::kVersion);
            rkc::write_json(out_path("build_report.json"),
                            {{"config", cfg},
                             {"version", rkc::kVersion},
                             {"actual_size", cs.size()},
                             {"total_weight", cs.points.total_weight()}});
        }
        return 0;
    }

    if (cmd_eval->parsed()) {
        json cfg = config_json("eval", o, m, out_dir);
        cfg["n"] = target_n;
        cfg["method"] = method_str;
        cfg["centers"] = center_count;
        cfg["c_t"] = c_t;
        const rkc::WeightedCoreset cs =
            rkc::build_by_method(method, X, o.k, o.z, m, target_n,
                                 rkc::derive_seed(o.seed, 0xc5ULL), sweep_opt);
        const auto centers = rkc::random_center_sets(
            X, o.k, center_count, rkc::derive_seed(o.seed, 0xc0deULL));
        const auto ee = rkc::max_empirical_error(X, cs, centers, o.z,
                                                 static_cast<double>(m));
        std::vector<std::vector<std::string>> rows;
        for (const auto& s : ee.samples)
            for (std::size_t t = 0; t < ee.budgets.size(); ++t)
                rows.push_back({std::to_string(s.center_set_id),
                                rkc::format_double(ee.budgets[t]),
                                rkc::format_double(s.errors[t])});
        rkc::write_table_csv(out_path("errors.csv"),
                             {"center_set_id", "t", "error"}, rows, cfg,
                             rkc::kVersion);
        json per_budget = json::array();
        for (std::size_t t = 0; t < ee.budgets.size(); ++t)
            per_budget.push_back({{"t", ee.budgets[t]},
                                  {"max_error", ee.max_error_per_budget[t]}});
        rkc::write_json(out_path("report.json"),
                        {{"config", cfg},
                         {"version", rkc::kVersion},
                         {"max_error", ee.max_error},
                         {"per_budget", per_budget},
                         {"skipped", ee.skipped},
                         {"coreset_size", cs.size()}});
        std::printf("max empirical error at t=m: %.6g", ee.max_error);
        if (ee.skipped > 0)
            std::printf(" (%d zero-cost evaluations skipped)", ee.skipped);
        std::printf("\n");
        return 0;
    }

    if (cmd_ssize->parsed()) {
        json cfg = config_json("sweep-size", o, m, out_dir);
        cfg["sizes"] = sizes_str;
        cfg["reps"] = reps;
        cfg["centers"] = center_count;
        cfg["c_t"] = c_t;
        const auto sweep = rkc::size_error_sweep(
            X, o.k, o.z, m, parse_size_list(sizes_str), o.seed, sweep_opt);
        rkc::write_table_csv(
            out_path("sweep_size.csv"),
            {"method", "N", "mean_error", "max_error", "variance", "reps"},
            sweep_rows(sweep, "N"), cfg, rkc::kVersion);
        rkc::write_json(out_path("report.json"),
                        {{"config", cfg},
                         {"version", rkc::kVersion},
                         {"tables", rkc::sweep_to_json(sweep)}});
        return 0;
    }

    if (cmd_sm->parsed()) {
        json cfg = config_json("sweep-m", o, m, out_dir);
        cfg["m_values"] = mvals_str;
        cfg["extra"] = fixed_extra;
        cfg["reps"] = reps;
        cfg["centers"] = center_count;
        cfg["c_t"] = c_t;
        const auto sweep = rkc::outlier_error_sweep(
            X, o.k, o.z, parse_size_list(mvals_str), fixed_extra, o.seed,
            sweep_opt);
        rkc::write_table_csv(
            out_path("sweep_m.csv"),
            {"method", "m", "mean_error", "max_error", "variance", "reps"},
            sweep_rows(sweep, "m"), cfg, rkc::kVersion);
        rkc::write_json(out_path("report.json"),
                        {{"config", cfg},
                         {"version", rkc::kVersion},
                         {"tables", rkc::sweep_to_json(sweep)}});
        return 0;
    }

    if (cmd_solve->parsed()) {
        json cfg = config_json("solve", o, m, out_dir);
        cfg["solver"] = solver_str;
        cfg["candidates"] = candidates;
        cfg["max_iters"] = max_iters;
        cfg["tol"] = tol;
        const rkc::Solver solver = rkc::solver_from_name(solver_str);
        rkc::SolveResult sol;
        if (solver == rkc::Solver::LL) {
            if (o.z != 2.0)
                throw std::runtime_error("solver ll requires --z 2");
            const auto init =
                rkc::robust_seed(X, o.k, static_cast<double>(m), o.z,
                                 rkc::derive_seed(o.seed, 0x11ULL));
            sol = rkc::lloyd_with_outliers(X, init, static_cast<double>(m),
                                           o.z, max_iters, tol);
        } else {
            const auto pool = rkc::candidate_pool(
                X, std::min<std::size_t>(candidates, X.size()),
                rkc::derive_seed(o.seed, 0x12ULL));
            sol = rkc::local_search_robust_median(
                X, pool, o.k, static_cast<double>(m), o.z, max_iters);
        }
        rkc::write_json(out_path("solution.json"),
                        {{"config", cfg},
                         {"version", rkc::kVersion},
                         {"centers", centers_to_json(sol.centers)},
                         {"cost_on_input", sol.cost_on_input},
                         {"iterations", sol.iterations},
                         {"cost_trace", sol.cost_trace}});
        rkc::write_json(out_path("report.json"),
                        {{"config", cfg},
                         {"version", rkc::kVersion},
                         {"wall_seconds", sol.wall_seconds}});
        std::printf("cost = %.10g after %d iterations\n", sol.cost_on_input,
                    sol.iterations);
        return 0;
    }

    if (cmd_bench->parsed()) {
        json cfg = config_json("bench-speedup", o, m, out_dir);
        cfg["n"] = target_n;
        cfg["solver"] = solver_str;
        cfg["candidates"] = candidates;
        cfg["max_iters"] = max_iters;
        cfg["tol"] = tol;
        cfg["c_t"] = c_t;
        const rkc::Solver solver = rkc::solver_from_name(solver_str);
        if (solver == rkc::Solver::LL && o.z != 2.0)
            throw std::runtime_error("solver ll requires --z 2");
        rkc::SpeedupOptions sopt;
        sopt.candidates = candidates;
        sopt.max_iters = max_iters;
        sopt.tol = tol;
        sopt.c_t = c_t;
        const auto rep = rkc::speedup_benchmark(X, o.k, o.z, m, target_n,
                                                solver, o.seed, sopt);
        rkc::write_table_csv(
            out_path("speedup.csv"),
            {"solver", "cost", "cost_prime", "cost_ratio", "coreset_size"},
            {{rkc::solver_name(rep.solver), rkc::format_double(rep.cost),
              rkc::format_double(rep.cost_prime),
              rkc::format_double(rep.cost_prime / rep.cost),
              std::to_string(rep.coreset_size)}},
            cfg, rkc::kVersion);
        rkc::write_json(out_path("report.json"),
                        {{"config", cfg},
                         {"version", rkc::kVersion},
                         {"cost", rep.cost},
                         {"cost_prime", rep.cost_prime},
                         {"T_C", rep.t_c},
                         {"T_S", rep.t_s},
                         {"T_X", rep.t_x},
                         {"speedup", rep.t_x / rep.t_s},
                         {"coreset_size", rep.coreset_size}});
        std::printf("cost=%.6g cost'=%.6g T_C=%.3gs T_S=%.3gs T_X=%.3gs "
                    "(speedup %.1fx)\n",
                    rep.cost, rep.cost_prime, rep.t_c, rep.t_s, rep.t_x,
                    rep.t_x / rep.t_s);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
