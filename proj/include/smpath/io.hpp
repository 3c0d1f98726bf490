#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "smpath/besov.hpp"
#include "smpath/fourier.hpp"
#include "smpath/sampling.hpp"
#include "smpath/verify.hpp"

namespace smpath::io {

/// 17 significant digits: enough to make doubles round-trip, so determinism
/// of artifacts is checkable byte for byte.
inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string path_csv(const path_sample& p) {
    std::string out = "t,value\n";
    for (std::size_t i = 0; i < p.grid.size(); ++i)
        out += format_g17(p.grid[i]) + "," + format_g17(p.values[i]) + "\n";
    return out;
}

inline std::string field_csv(const field_sample& f) {
    if (f.dim == 1) {
        std::string out = "t,value\n";
        const int pts = f.points_per_axis();
        for (int i = 0; i < pts; ++i)
            out += format_g17(static_cast<double>(i) / f.cells_per_axis()) + "," +
                   format_g17(f.at(i)) + "\n";
        return out;
    }
    std::string out = "x1,x2,value\n";
    const int pts = f.points_per_axis();
    for (int i = 0; i < pts; ++i)
        for (int j = 0; j < pts; ++j)
            out += format_g17(static_cast<double>(i) / f.cells_per_axis()) + "," +
                   format_g17(static_cast<double>(j) / f.cells_per_axis()) + "," +
                   format_g17(f.at(i, j)) + "\n";
    return out;
}

inline std::string coefficients_csv(const fourier_coefficients& c) {
    std::string out = "k,xi,eta\n";
    for (int k = 0; k <= c.max_k; ++k)
        out += std::to_string(k) + "," + format_g17(c.xi[k]) + "," + format_g17(c.eta[k]) + "\n";
    return out;
}

inline std::string replicate_csv(const verification_report& rep) {
    std::string out = "replicate";
    for (const auto& col : rep.replicate_columns) out += "," + col;
    out += "\n";
    for (std::size_t r = 0; r < rep.replicate_rows.size(); ++r) {
        out += std::to_string(r);
        for (double v : rep.replicate_rows[r]) out += "," + format_g17(v);
        out += "\n";
    }
    return out;
}

namespace detail {

inline std::vector<std::vector<double>> parse_numeric_csv(const std::string& text,
                                                          std::size_t columns) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) { // header
            first = false;
            continue;
        }
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != columns)
            throw std::invalid_argument("CSV row has " + std::to_string(row.size()) +
                                        " columns, expected " + std::to_string(columns));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("CSV contains no data rows");
    return rows;
}

inline int infer_depth(std::size_t points_per_axis) {
    int depth = 0;
    std::size_t n = points_per_axis - 1;
    while (n > 1) {
        if (n % 2 != 0) return -1;
        n /= 2;
        ++depth;
    }
    return (n == 1) ? depth : -1;
}

} // namespace detail

/// Loads an externally produced sample back into a field (the `t,value` and
/// `x1,x2,value` formats written by this toolkit). The grid must be dyadic,
/// 2^depth + 1 points per axis. The model slot is a placeholder: regularity
/// analysis never consults it.
inline field_sample field_from_csv(const std::string& text, int dim) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("field dimension must be 1 or 2");
    field_sample f;
    f.model = sm_model::lebesgue(1.0);
    f.stream = {};
    f.dim = dim;
    const auto rows = detail::parse_numeric_csv(text, dim == 1 ? 2 : 3);
    std::size_t pts = 0;
    if (dim == 1) {
        pts = rows.size();
    } else {
        const double root = std::sqrt(static_cast<double>(rows.size()));
        pts = static_cast<std::size_t>(std::llround(root));
        if (pts * pts != rows.size())
            throw std::invalid_argument("2-d field CSV must hold a square grid");
    }
    const int depth = detail::infer_depth(pts);
    if (depth < 1) throw std::invalid_argument("field grid must have 2^depth + 1 points per axis");
    f.depth = depth;
    f.values.reserve(rows.size());
    for (const auto& row : rows) f.values.push_back(row.back());
    return f;
}

inline nlohmann::json besov_report_json(const besov_level_sums& sums,
                                        const membership_result& membership) {
    nlohmann::json levels = nlohmann::json::array();
    for (std::size_t i = 0; i < sums.levels.size(); ++i)
        levels.push_back({{"n", sums.levels[i]},
                          {"V", sums.raw[i]},
                          {"W", sums.weighted[i]},
                          {"cumulative", sums.cumulative[i]}});
    return nlohmann::json{
        {"params",
         {{"p", sums.params.p},
          {"q", sums.params.q},
          {"alpha", sums.params.alpha},
          {"direction", sums.params.direction},
          {"levels", {sums.params.level_min, sums.params.level_max}},
          {"slope_margin", sums.params.slope_margin},
          {"dim", sums.dim}}},
        {"levels", levels},
        {"slope", membership.slope},
        {"slope_stderr", membership.slope_stderr},
        {"verdict", verdict_name(membership.verdict)}};
}

inline nlohmann::json convergence_report_json(const std::vector<convergence_entry>& entries) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : entries)
        arr.push_back({{"n", e.n},
                       {"sup_interior_error", e.sup_interior_error},
                       {"endpoint_error", e.endpoint_error},
                       {"energy", e.energy}});
    return arr;
}

/// FNV-1a 64-bit checksum, hex-encoded. Stable and dependency-free; used to
/// fingerprint artifacts in the run manifest.
inline std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << contents;
    if (!out) throw std::runtime_error("failed writing " + path);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace smpath::io
