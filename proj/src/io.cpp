#include "rkc/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rkc/kernels.hpp"
#include "rkc/rng.hpp"

namespace rkc {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    for (std::string& s : out) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        s = (b == std::string::npos) ? "" : s.substr(b, e - b + 1);
    }
    return out;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && std::isfinite(out);
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& columns,
                 std::optional<std::size_t> subsample, std::uint64_t seed,
                 bool standardize) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);

    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(path + ": empty file");
    const std::vector<std::string> header = split_csv_line(line);

    // resolve the column selection against the header: names, 0-based
    // indices, or inclusive index ranges like 3-17
    std::vector<std::size_t> sel;
    auto parse_index = [&](const std::string& tok, std::size_t& out) {
        const auto [p, ec] =
            std::from_chars(tok.data(), tok.data() + tok.size(), out);
        return ec == std::errc{} && p == tok.data() + tok.size() &&
               out < header.size();
    };
    if (columns.empty()) {
        for (std::size_t j = 0; j < header.size(); ++j) sel.push_back(j);
    } else {
        for (const std::string& tok : split_csv_line(columns)) {
            std::size_t j = header.size();
            for (std::size_t h = 0; h < header.size(); ++h)
                if (header[h] == tok) { j = h; break; }
            if (j < header.size()) {
                sel.push_back(j);
                continue;
            }
            if (parse_index(tok, j)) {
                sel.push_back(j);
                continue;
            }
            const auto dash = tok.find('-');
            std::size_t lo = 0, hi = 0;
            if (dash != std::string::npos && dash > 0 &&
                parse_index(tok.substr(0, dash), lo) &&
                parse_index(tok.substr(dash + 1), hi) && lo <= hi) {
                for (std::size_t v = lo; v <= hi; ++v) sel.push_back(v);
                continue;
            }
            throw std::runtime_error(path + ": unknown column '" + tok + "'");
        }
    }
    if (sel.empty()) throw std::runtime_error(path + ": no columns selected");

    Dataset X;
    X.dim = sel.size();
    std::size_t row_no = 1;  // header was row 1
    while (std::getline(in, line)) {
        ++row_no;
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        Point p(sel.size());
        for (std::size_t j = 0; j < sel.size(); ++j) {
            if (sel[j] >= cells.size())
                throw std::runtime_error(path + ": row " +
                                         std::to_string(row_no) +
                                         ": missing value in column '" +
                                         header[sel[j]] + "'");
            if (!parse_double(cells[sel[j]], p[j]))
                throw std::runtime_error(
                    path + ": row " + std::to_string(row_no) +
                    ": non-numeric value '" + cells[sel[j]] + "' in column '" +
                    header[sel[j]] + "'");
        }
        X.add_unit(p);
    }
    if (X.empty()) throw std::runtime_error(path + ": no data rows");

    if (subsample && *subsample < X.size()) {
        Rng rng(derive_seed(seed, 0x5ab5ULL));
        std::vector<std::size_t> rows =
            rng.sample_without_replacement(X.size(), *subsample);
        std::sort(rows.begin(), rows.end());
        Dataset sub = X.subset(rows);
        // re-id 0..n-1 so downstream ids stay dense
        for (std::size_t i = 0; i < sub.size(); ++i)
            sub.ids[i] = static_cast<std::int64_t>(i);
        X = std::move(sub);
    }

    if (standardize) {
        const std::size_t n = X.size(), d = X.dim;
        for (std::size_t j = 0; j < d; ++j) {
            double mean = 0.0;
            for (std::size_t i = 0; i < n; ++i) mean += X.coords[i * d + j];
            mean /= static_cast<double>(n);
            double var = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double v = X.coords[i * d + j] - mean;
                var += v * v;
            }
            const double sd = std::sqrt(var / static_cast<double>(n));
            for (std::size_t i = 0; i < n; ++i) {
                double& v = X.coords[i * d + j];
                v = sd > 0.0 ? (v - mean) / sd : 0.0;
            }
        }
    }
    return X;
}

SynthResult make_synthetic(const SynthSpec& spec) {
    if (spec.clusters < 1) throw std::invalid_argument("clusters must be >= 1");
    if (spec.dim < 1) throw std::invalid_argument("dim must be >= 1");
    Rng rng(derive_seed(spec.seed, 0x5711ULL));

    SynthResult out;
    out.data.dim = spec.dim;
    out.true_centers.dim = spec.dim;

    for (int c = 0; c < spec.clusters; ++c) {
        Point center(spec.dim);
        for (double& v : center) v = spec.separation * rng.normal();
        out.true_centers.add(center);
    }

    std::int64_t id = 0;
    for (int c = 0; c < spec.clusters; ++c) {
        const PointView center = out.true_centers.center(c);
        for (std::size_t i = 0; i < spec.points_per_cluster; ++i) {
            Point p(spec.dim);
            for (std::size_t j = 0; j < spec.dim; ++j)
                p[j] = center[j] + rng.normal();
            out.data.add(p, 1.0, id++);
        }
    }

    if (spec.outliers > 0) {
        double r_max = 0.0;
        for (std::size_t i = 0; i < out.data.size(); ++i) {
            double s = 0.0;
            const PointView p = out.data.point(i);
            for (double v : p) s += v * v;
            r_max = std::max(r_max, std::sqrt(s));
        }
        for (std::size_t o = 0; o < spec.outliers; ++o) {
            Point dir(spec.dim);
            double norm = 0.0;
            do {
                norm = 0.0;
                for (double& v : dir) {
                    v = rng.normal();
                    norm += v * v;
                }
                norm = std::sqrt(norm);
            } while (norm == 0.0);
            const double radius =
                r_max * spec.outlier_distance * (1.0 + rng.uniform());
            Point p(spec.dim);
            for (std::size_t j = 0; j < spec.dim; ++j)
                p[j] = dir[j] / norm * radius;
            out.data.add(p, 1.0, id++);
        }
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    // shortest form that round-trips; %.17g is always exact for doubles
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        double back = 0.0;
        std::from_chars(buf, buf + std::char_traits<char>::length(buf), back);
        if (back == v) break;
    }
    return buf;
}

namespace {

void write_comment_header(std::ofstream& out, const json& config,
                          const std::string& version) {
    out << "# version: " << version << "\n";
    out << "# config: " << config.dump() << "\n";
}

}  // namespace

void write_coreset_csv(const std::string& path, const WeightedCoreset& cs,
                       const json& config, const std::string& version) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_comment_header(out, config, version);
    out << "id,weight,provenance";
    for (std::size_t j = 0; j < cs.points.dim; ++j) out << ",x" << j;
    out << "\n";
    for (std::size_t i = 0; i < cs.size(); ++i) {
        out << cs.points.ids[i] << "," << format_double(cs.points.weights[i])
            << "," << provenance_name(cs.provenance[i]);
        const PointView p = cs.points.point(i);
        for (double v : p) out << "," << format_double(v);
        out << "\n";
    }
}

WeightedCoreset read_coreset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    WeightedCoreset cs;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() < 4)
            throw std::runtime_error(path + ": malformed coreset row");
        Point p(cells.size() - 3);
        for (std::size_t j = 3; j < cells.size(); ++j)
            if (!parse_double(cells[j], p[j - 3]))
                throw std::runtime_error(path + ": bad coordinate " + cells[j]);
        double w = 0.0;
        if (!parse_double(cells[1], w))
            throw std::runtime_error(path + ": bad weight " + cells[1]);
        std::int64_t id = 0;
        const auto [q, ec] =
            std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(), id);
        if (ec != std::errc{} || q != cells[0].data() + cells[0].size())
            throw std::runtime_error(path + ": bad id " + cells[0]);
        cs.points.add(p, w, id);
        cs.provenance.push_back(provenance_from_name(cells[2]));
    }
    return cs;
}

void write_table_csv(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows,
                     const json& config, const std::string& version) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_comment_header(out, config, version);
    for (std::size_t j = 0; j < header.size(); ++j)
        out << (j ? "," : "") << header[j];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j)
            out << (j ? "," : "") << row[j];
        out << "\n";
    }
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

json decomposition_to_json(const Decomposition& dec, const Dataset& inliers) {
    json rings = json::array();
    for (const Ring& r : dec.rings) {
        json ids = json::array();
        for (std::size_t row : r.members) ids.push_back(inliers.ids[row]);
        rings.push_back({{"cluster", r.cluster_index},
                         {"dyadic_index", r.dyadic_index},
                         {"cost", r.cost},
                         {"weight", r.weight},
                         {"member_ids", std::move(ids)}});
    }
    json groups = json::array();
    for (const Group& g : dec.groups) {
        json ids = json::array();
        for (std::size_t row : g.members) ids.push_back(inliers.ids[row]);
        json lo = g.lo == kRingAtCenter ? json() : json(g.lo);
        json hi = g.hi == kRingAtCenter ? json() : json(g.hi);
        groups.push_back({{"cluster", g.cluster_index},
                          {"interval", {std::move(lo), std::move(hi)}},
                          {"cost", g.cost},
                          {"weight", g.weight},
                          {"degenerate", g.degenerate},
                          {"member_ids", std::move(ids)}});
    }
    return {{"threshold_fraction", dec.threshold_fraction},
            {"cluster_costs", dec.cluster_cost},
            {"rings", std::move(rings)},
            {"groups", std::move(groups)}};
}

json sweep_to_json(const std::map<Method, std::vector<SweepRow>>& sweep) {
    json out = json::object();
    for (const auto& [method, rows] : sweep) {
        json arr = json::array();
        for (const SweepRow& r : rows)
            arr.push_back({{"param", r.param},
                           {"mean_error", r.mean_error},
                           {"max_error", r.max_error},
                           {"variance", r.variance},
                           {"repetitions", r.repetitions}});
        out[method_name(method)] = std::move(arr);
    }
    return out;
}

}  // namespace rkc
