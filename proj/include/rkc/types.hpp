#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rkc {

using Point = std::vector<double>;
using PointView = std::span<const double>;

/// Thrown when a coreset target size cannot be met; carries the smallest
/// size that would have worked.
class SizingError : public std::runtime_error {
public:
    SizingError(const std::string& msg, std::size_t minimum_feasible)
        : std::runtime_error(msg), minimum_feasible_(minimum_feasible) {}
    std::size_t minimum_feasible() const { return minimum_feasible_; }

private:
    std::size_t minimum_feasible_;
};

/// Weighted point set. Rows are stored flat (row-major), with a nonnegative
/// weight and a stable integer id per row. Unweighted data uses weight 1.
struct Dataset {
    std::size_t dim = 0;
    std::vector<double> coords;        // size() * dim
    std::vector<double> weights;       // size()
    std::vector<std::int64_t> ids;     // size()

    std::size_t size() const { return weights.size(); }
    bool empty() const { return weights.empty(); }

    PointView point(std::size_t i) const {
        return PointView{coords.data() + i * dim, dim};
    }

    void add(PointView p, double w, std::int64_t id) {
        if (dim == 0) dim = p.size();
        if (p.size() != dim)
            throw std::invalid_argument("point dimension mismatch");
        coords.insert(coords.end(), p.begin(), p.end());
        weights.push_back(w);
        ids.push_back(id);
    }

    void add_unit(PointView p) { add(p, 1.0, static_cast<std::int64_t>(size())); }

    double total_weight() const;

    bool unit_weights() const {
        for (double w : weights)
            if (w != 1.0) return false;
        return true;
    }

    Dataset subset(std::span<const std::size_t> rows) const {
        Dataset out;
        out.dim = dim;
        out.coords.reserve(rows.size() * dim);
        out.weights.reserve(rows.size());
        out.ids.reserve(rows.size());
        for (std::size_t r : rows) out.add(point(r), weights[r], ids[r]);
        return out;
    }
};

/// Ordered list of centers; repetitions permitted.
struct CenterSet {
    std::size_t dim = 0;
    std::vector<double> coords;

    std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
    bool empty() const { return coords.empty(); }

    PointView center(std::size_t j) const {
        return PointView{coords.data() + j * dim, dim};
    }

    void add(PointView c) {
        if (dim == 0) dim = c.size();
        if (c.size() != dim)
            throw std::invalid_argument("center dimension mismatch");
        coords.insert(coords.end(), c.begin(), c.end());
    }

    static CenterSet from_rows(const Dataset& X, std::span<const std::size_t> rows) {
        CenterSet c;
        for (std::size_t r : rows) c.add(X.point(r));
        return c;
    }
};

inline void require_same_dim(const Dataset& X, const CenterSet& C) {
    if (!X.empty() && !C.empty() && X.dim != C.dim)
        throw std::invalid_argument("dataset/center dimension mismatch");
}

}  // namespace rkc
