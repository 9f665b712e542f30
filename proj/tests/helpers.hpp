#pragma once

#include <initializer_list>
#include <vector>

#include "rkc/rng.hpp"
#include "rkc/types.hpp"

namespace rkc::test {

inline Dataset from_coords(const std::vector<std::vector<double>>& pts) {
    Dataset X;
    for (const auto& p : pts) X.add_unit(PointView{p.data(), p.size()});
    return X;
}

inline Dataset line(const std::vector<double>& xs) {
    Dataset X;
    for (double x : xs) X.add_unit(PointView{&x, 1});
    return X;
}

inline Dataset weighted_line(const std::vector<std::pair<double, double>>& xw) {
    Dataset X;
    std::int64_t id = 0;
    for (auto [x, w] : xw) X.add(PointView{&x, 1}, w, id++);
    return X;
}

inline CenterSet centers(const std::vector<std::vector<double>>& cs) {
    CenterSet C;
    for (const auto& c : cs) C.add(PointView{c.data(), c.size()});
    return C;
}

inline Dataset random_dataset(Rng& rng, std::size_t n, std::size_t d,
                              double scale = 1.0, bool unit_weights = true) {
    Dataset X;
    for (std::size_t i = 0; i < n; ++i) {
        Point p(d);
        for (double& v : p) v = scale * (rng.uniform() * 2.0 - 1.0);
        X.add(p, unit_weights ? 1.0 : 0.25 + rng.uniform() * 3.0,
              static_cast<std::int64_t>(i));
    }
    return X;
}

inline CenterSet random_centers(Rng& rng, std::size_t k, std::size_t d,
                                double scale = 1.0) {
    CenterSet C;
    for (std::size_t j = 0; j < k; ++j) {
        Point p(d);
        for (double& v : p) v = scale * (rng.uniform() * 2.0 - 1.0);
        C.add(p);
    }
    return C;
}

inline bool close_rel(double a, double b, double tol) {
    const double diff = a > b ? a - b : b - a;
    const double mag = std::max(std::abs(a), std::abs(b));
    return diff <= tol * std::max(mag, 1e-300) || diff <= 1e-300;
}

}  // namespace rkc::test
