#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rkc/coreset.hpp"
#include "rkc/decompose.hpp"
#include "rkc/eval.hpp"
#include "rkc/types.hpp"

namespace rkc {

using json = nlohmann::json;

/// Parses a header CSV into a Dataset. `columns` selects features by name
/// or 0-based index, comma-separated; empty means every column. Non-numeric
/// or missing cells in selected columns are rejected with their row number.
/// `subsample` keeps a uniform sample without replacement. `standardize`
/// centers and scales each selected column to unit variance.
Dataset load_csv(const std::string& path, const std::string& columns,
                 std::optional<std::size_t> subsample, std::uint64_t seed,
                 bool standardize = false);

struct SynthSpec {
    int clusters = 5;
    std::size_t points_per_cluster = 4000;
    std::size_t dim = 5;
    double separation = 10.0;        // scale of the cluster center layout
    std::size_t outliers = 0;
    double outlier_distance = 10.0;  // planted radius as a multiple of the
                                     // largest inlier radius
    std::uint64_t seed = 1;
};

struct SynthResult {
    Dataset data;
    CenterSet true_centers;
};

/// Gaussian mixture with planted far outliers; the generating centers come
/// back alongside the data.
SynthResult make_synthetic(const SynthSpec& spec);

/// Shortest decimal form that round-trips the exact double.
std::string format_double(double v);

/// Coreset CSV: comment lines with version/config, then
/// id,weight,provenance,x0,...,x(d-1).
void write_coreset_csv(const std::string& path, const WeightedCoreset& cs,
                       const json& config, const std::string& version);
WeightedCoreset read_coreset_csv(const std::string& path);

/// Generic CSV writer with the same comment header convention.
void write_table_csv(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows,
                     const json& config, const std::string& version);

void write_json(const std::string& path, const json& j);

json decomposition_to_json(const Decomposition& dec, const Dataset& inliers);
json sweep_to_json(const std::map<Method, std::vector<SweepRow>>& sweep);

}  // namespace rkc
