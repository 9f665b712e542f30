#include <cstring>

#include "doctest.h"
#include "helpers.hpp"
#include "rkc/kernels.hpp"

using namespace rkc;

TEST_CASE("omp kernels match the serial reference bit for bit") {
    Rng rng(42);
    for (int round = 0; round < 5; ++round) {
        const std::size_t n = 100 + static_cast<std::size_t>(rng.below(5000));
        const std::size_t d = 1 + static_cast<std::size_t>(rng.below(8));
        const std::size_t k = 1 + static_cast<std::size_t>(rng.below(12));
        const Dataset X = test::random_dataset(rng, n, d, 50.0);
        const CenterSet C = test::random_centers(rng, k, d, 50.0);

        std::vector<double> ds(n), dp(n);
        std::vector<int> is(n), ip(n);
        kernels::nearest_center_serial(X, C, ds, is);
        kernels::nearest_center_omp(X, C, dp, ip);
        CHECK(std::memcmp(ds.data(), dp.data(), n * sizeof(double)) == 0);
        CHECK(std::memcmp(is.data(), ip.data(), n * sizeof(int)) == 0);

        std::vector<double> as(n, 1e300), ap(n, 1e300);
        for (double z : {1.0, 2.0, 3.0, 1.7}) {
            kernels::min_powdist_update_serial(X, C.center(0), z, as);
            kernels::min_powdist_update_omp(X, C.center(0), z, ap);
            CHECK(std::memcmp(as.data(), ap.data(), n * sizeof(double)) == 0);
        }
    }
}

TEST_CASE("pairwise_sum is exact on integers and order-stable") {
    std::vector<double> v(1000);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
    CHECK(kernels::pairwise_sum(v) == 999.0 * 1000.0 / 2.0);
    CHECK(kernels::pairwise_sum(v) == kernels::pairwise_sum(v));
    CHECK(kernels::pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("pow_z fast paths agree with std::pow") {
    for (double d : {0.0, 0.5, 1.0, 3.25, 100.0}) {
        CHECK(kernels::pow_z(d, 1.0) == d);
        CHECK(kernels::pow_z(d, 2.0) == d * d);
        CHECK(kernels::pow_z(d, 3.0) == d * d * d);
        if (d > 0.0)
            CHECK(test::close_rel(kernels::pow_z(d, 1.5), std::pow(d, 1.5),
                                  1e-15));
    }
}
