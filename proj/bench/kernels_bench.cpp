// Times the OpenMP kernels against their serial reference implementations
// on synthetic data and verifies the outputs match bit for bit.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "rkc/io.hpp"
#include "rkc/kernels.hpp"
#include "rkc/types.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        f();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n = 200000;
    std::size_t d = 5;
    std::size_t k = 8;
    int reps = 5;
    for (int i = 1; i + 1 < argc; i += 2) {
        if (!std::strcmp(argv[i], "--points")) n = std::stoul(argv[i + 1]);
        else if (!std::strcmp(argv[i], "--dim")) d = std::stoul(argv[i + 1]);
        else if (!std::strcmp(argv[i], "--centers")) k = std::stoul(argv[i + 1]);
        else if (!std::strcmp(argv[i], "--reps")) reps = std::stoi(argv[i + 1]);
    }

    rkc::SynthSpec spec;
    spec.clusters = static_cast<int>(k);
    spec.points_per_cluster = n / k;
    spec.dim = d;
    spec.seed = 7;
    const rkc::Dataset X = rkc::make_synthetic(spec).data;
    const rkc::CenterSet C = rkc::make_synthetic(spec).true_centers;

    std::printf("n=%zu d=%zu k=%zu threads=%d reps=%d\n", X.size(), d, k,
                rkc::kernels::max_threads(), reps);

    std::vector<double> dist_s(X.size()), dist_p(X.size());
    std::vector<int> idx_s(X.size()), idx_p(X.size());

    const double t_serial = time_best_of(reps, [&] {
        rkc::kernels::nearest_center_serial(X, C, dist_s, idx_s);
    });
    const double t_omp = time_best_of(reps, [&] {
        rkc::kernels::nearest_center_omp(X, C, dist_p, idx_p);
    });
    const bool same_nc =
        !std::memcmp(dist_s.data(), dist_p.data(), dist_s.size() * 8) &&
        !std::memcmp(idx_s.data(), idx_p.data(), idx_s.size() * 4);
    std::printf("nearest_center   serial %8.2f ms   omp %8.2f ms   "
                "speedup %.2fx   bit-identical %s\n",
                t_serial * 1e3, t_omp * 1e3, t_serial / t_omp,
                same_nc ? "yes" : "NO");

    std::vector<double> acc_s(X.size(), 1e300), acc_p(X.size(), 1e300);
    const double u_serial = time_best_of(reps, [&] {
        rkc::kernels::min_powdist_update_serial(X, C.center(0), 2.0, acc_s);
    });
    const double u_omp = time_best_of(reps, [&] {
        rkc::kernels::min_powdist_update_omp(X, C.center(0), 2.0, acc_p);
    });
    const bool same_up =
        !std::memcmp(acc_s.data(), acc_p.data(), acc_s.size() * 8);
    std::printf("min_powdist      serial %8.2f ms   omp %8.2f ms   "
                "speedup %.2fx   bit-identical %s\n",
                u_serial * 1e3, u_omp * 1e3, u_serial / u_omp,
                same_up ? "yes" : "NO");

    if (!same_nc || !same_up) {
        std::fprintf(stderr, "kernel outputs diverged\n");
        return 1;
    }
    return 0;
}
