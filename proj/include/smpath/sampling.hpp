#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "smpath/common.hpp"
#include "smpath/model.hpp"
#include "smpath/rng.hpp"

namespace smpath {

/// A realization of t |-> mu((0,t]) on a closed equispaced grid
/// 0 = t_0 < ... < t_n = T. values[0] is always 0 (mu of the empty set).
struct path_sample {
    sm_model model;
    rng_stream stream;
    std::vector<double> grid;
    std::vector<double> values;

    int steps() const { return static_cast<int>(grid.size()) - 1; }
    double horizon() const { return model.horizon; }
    double step() const { return model.horizon / steps(); }

    /// Linear interpolation between grid points (exact at the nodes).
    double value_at(double t) const {
        const double h = step();
        if (!(t >= 0.0 && t <= model.horizon + 0.5 * h))
            throw std::domain_error("t outside the sampled horizon");
        const int n = steps();
        const double pos = t / h;
        int j = static_cast<int>(pos);
        if (j >= n) return values.back();
        const double frac = pos - j;
        return values[j] + frac * (values[j + 1] - values[j]);
    }

    std::string descriptor() const {
        return kind_name(model.kind) + " T=" + std::to_string(model.horizon) +
               " seed=" + std::to_string(stream.master_seed) +
               " stream=" + std::to_string(stream.index) + " grid=" + std::to_string(steps());
    }
};

/// A realization of x |-> mu(prod_i [0, x_i]) on the dyadic grid
/// {k/2^depth}^dim of the unit cube (grid coordinates are unit-scaled; the
/// model's horizon stretches the underlying domain). Values vanish whenever
/// a coordinate is 0.
struct field_sample {
    sm_model model;
    rng_stream stream;
    int dim = 1;
    int depth = 0;                 // resolution N_max; 2^depth cells per axis
    std::vector<double> values;    // row-major (2^depth + 1)^dim

    int cells_per_axis() const { return 1 << depth; }
    int points_per_axis() const { return cells_per_axis() + 1; }

    double at(int i) const { return values[static_cast<std::size_t>(i)]; }
    double at(int i, int j) const {
        return values[static_cast<std::size_t>(i) * points_per_axis() + j];
    }

    /// Rectangle increment of mu over [i0,i1] x [j0,j1] (grid indices),
    /// by inclusion-exclusion of the corner values.
    double rectangle_increment(int i0, int i1, int j0, int j1) const {
        return at(i1, j1) - at(i0, j1) - at(i1, j0) + at(i0, j0);
    }
};

namespace detail {

/// fBm covariance R(s,t) = (s^{2H} + t^{2H} - |t-s|^{2H}) / 2.
inline double fbm_covariance(double s, double t, double hurst) {
    const double h2 = 2.0 * hurst;
    return 0.5 * (std::pow(s, h2) + std::pow(t, h2) - std::pow(std::abs(t - s), h2));
}

/// Dense lower-triangular Cholesky factor (row-major n x n) of the fBm
/// covariance matrix on the strictly positive grid times.
inline std::vector<double> fbm_cholesky_factor(const std::vector<double>& times, double hurst) {
    const std::size_t n = times.size();
    std::vector<double> L(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            L[i * n + j] = fbm_covariance(times[i], times[j], hurst);
    for (std::size_t j = 0; j < n; ++j) {
        double d = L[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= L[j * n + k] * L[j * n + k];
        if (!(d > 0.0))
            throw resource_error("fbm covariance factorization lost positive definiteness");
        const double root = std::sqrt(d);
        L[j * n + j] = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = L[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= L[i * n + k] * L[j * n + k];
            L[i * n + j] = s / root;
        }
    }
    return L;
}

} // namespace detail

/// Samples paths of a fixed (model, grid size) pair. For fBm the dense
/// covariance factorization is done once at construction, so Monte Carlo
/// loops can draw many paths cheaply from substreams.
class path_sampler {
public:
    path_sampler(const sm_model& model, int grid_size, int fbm_point_cap = fbm_max_grid_points)
        : model_(model), grid_size_(grid_size) {
        model.validate();
        if (grid_size < 2) throw std::invalid_argument("grid_size must be >= 2");
        grid_.resize(grid_size + 1);
        for (int i = 0; i <= grid_size; ++i)
            grid_[i] = model.horizon * static_cast<double>(i) / grid_size;
        grid_.back() = model.horizon;
        if (model.kind == sm_kind::fbm) {
            if (grid_size + 1 > fbm_point_cap)
                throw resource_error("fbm grid exceeds the dense factorization cap of " +
                                     std::to_string(fbm_point_cap) + " points");
            std::vector<double> positive(grid_.begin() + 1, grid_.end());
            chol_ = detail::fbm_cholesky_factor(positive, model.hurst);
        }
        if (model.kind == sm_kind::brownian_sheet_2d)
            throw invalid_model_error("sheet2d has no 1-d path; sample it as a d=2 field");
    }

    const std::vector<double>& grid() const { return grid_; }

    path_sample sample(rng_stream stream) const {
        path_sample p;
        p.model = model_;
        p.stream = stream;
        p.grid = grid_;
        p.values.assign(grid_.size(), 0.0);
        switch (model_.kind) {
            case sm_kind::deterministic_lebesgue:
                p.values = grid_;
                break;
            case sm_kind::rademacher_series: {
                const auto r = realize_rademacher(model_, stream);
                fill_rademacher(r, p.values);
                break;
            }
            case sm_kind::wiener: {
                rng_engine eng(stream);
                const double sd = std::sqrt(model_.horizon / grid_size_);
                for (int i = 1; i <= grid_size_; ++i)
                    p.values[i] = p.values[i - 1] + sd * eng.gaussian();
                break;
            }
            case sm_kind::fbm: {
                rng_engine eng(stream);
                const std::size_t n = grid_.size() - 1;
                std::vector<double> z(n);
                for (auto& zi : z) zi = eng.gaussian();
                for (std::size_t i = 0; i < n; ++i) {
                    double s = 0.0;
                    for (std::size_t k = 0; k <= i; ++k) s += chol_[i * n + k] * z[k];
                    p.values[i + 1] = s;
                }
                break;
            }
            case sm_kind::brownian_sheet_2d:
                break; // rejected in the constructor
        }
        return p;
    }

    /// Path of an already-frozen Rademacher realization on this grid.
    path_sample sample(const rademacher_realization& r, rng_stream provenance = {}) const {
        if (model_.kind != sm_kind::rademacher_series ||
            r.truncation() != model_.truncation || r.horizon != model_.horizon)
            throw invalid_model_error("realization does not match the sampler's model");
        path_sample p;
        p.model = model_;
        p.stream = provenance;
        p.grid = grid_;
        p.values.assign(grid_.size(), 0.0);
        fill_rademacher(r, p.values);
        return p;
    }

private:
    void fill_rademacher(const rademacher_realization& r, std::vector<double>& values) const {
        // mu(t_i) = sum_k eps_k k^{-1} (t_i/T)^{c_k}, evaluated via exp/log.
        const int K = r.truncation();
        for (std::size_t i = 1; i < grid_.size(); ++i) {
            const double lx = std::log(grid_[i] / model_.horizon);
            double sum = 0.0;
            for (int k = 0; k < K; ++k)
                sum += r.signs[k] * std::exp(r.exponents[k] * lx) / static_cast<double>(k + 1);
            values[i] = sum;
        }
    }

    sm_model model_;
    int grid_size_;
    std::vector<double> grid_;
    std::vector<double> chol_;
};

inline path_sample sample_path(const sm_model& model, rng_stream stream, int grid_size) {
    return path_sampler(model, grid_size).sample(stream);
}

/// Samples mu(x) on the dyadic grid of the unit cube. d=1 reuses the path
/// machinery on 2^depth steps; d=2 is the Brownian sheet with independent
/// N(0, cell area) increments accumulated by 2-D prefix sums.
inline field_sample sample_field(const sm_model& model, rng_stream stream, int dim, int depth) {
    model.validate();
    if (dim != 1 && dim != 2) throw std::invalid_argument("field dimension must be 1 or 2");
    if (depth < 1) throw std::invalid_argument("field depth must be >= 1");
    const bool is_sheet = model.kind == sm_kind::brownian_sheet_2d;
    if (dim == 2 && !is_sheet)
        throw invalid_model_error("only the sheet2d model supports d=2 fields");
    if (dim == 1 && is_sheet)
        throw invalid_model_error("sheet2d supports d=2 fields only");
    const int cap = (dim == 1) ? field_max_depth_1d : field_max_depth_2d;
    if (depth > cap)
        throw std::invalid_argument("field depth exceeds the cap of " + std::to_string(cap) +
                                    " for d=" + std::to_string(dim));

    field_sample f;
    f.model = model;
    f.stream = stream;
    f.dim = dim;
    f.depth = depth;

    if (dim == 1) {
        f.values = sample_path(model, stream, 1 << depth).values;
        return f;
    }

    const int n = 1 << depth;
    const int pts = n + 1;
    f.values.assign(static_cast<std::size_t>(pts) * pts, 0.0);
    rng_engine eng(stream);
    const double cell_side = model.horizon / n;
    const double sd = cell_side; // sqrt(cell area)
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            const double inc = sd * eng.gaussian();
            f.values[static_cast<std::size_t>(i) * pts + j] =
                f.values[static_cast<std::size_t>(i - 1) * pts + j] +
                f.values[static_cast<std::size_t>(i) * pts + j - 1] -
                f.values[static_cast<std::size_t>(i - 1) * pts + j - 1] + inc;
        }
    }
    return f;
}

} // namespace smpath
