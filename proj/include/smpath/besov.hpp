#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "smpath/sampling.hpp"
#include "smpath/stats.hpp"

namespace smpath {

struct besov_params {
    double p = 2.0;
    double q = 2.0;         // direct norm only
    double alpha = 0.5;     // smoothness, in (0,1)
    int direction = 1;      // 1-based coordinate of the dyadic increments
    int level_min = 3;
    int level_max = 0;      // 0 = use the field's full resolution
    double slope_margin = 0.1;

    void validate() const {
        if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
        if (!(q >= 1.0)) throw std::invalid_argument("q must be >= 1");
        if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    }
};

/// Per-level dyadic increment sums:
///   V_n = sum_{y in U(n,i)} |mu(y + 2^{-n} e^{(i)}) - mu(y)|^p
///   W_n = 2^{n (alpha p - d)} V_n
/// U(n,i) runs over y = (k_1/2^n, ..., k_d/2^n) with k_i in 0..2^n-1 and the
/// other coordinates in 0..2^n (boundary included).
struct besov_level_sums {
    besov_params params;
    int dim = 1;
    std::vector<int> levels;
    std::vector<double> raw;        // V_n
    std::vector<double> weighted;   // W_n
    std::vector<double> cumulative; // sum_{m<=n} W_m over the computed range
    double slope = 0.0;             // least-squares slope of log2 W_n vs n
    double slope_stderr = 0.0;
    bool all_zero = false;
};

enum class besov_verdict { convergent, divergent, inconclusive };

inline std::string verdict_name(besov_verdict v) {
    switch (v) {
        case besov_verdict::convergent: return "CONVERGENT";
        case besov_verdict::divergent: return "DIVERGENT";
        case besov_verdict::inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

inline besov_level_sums dyadic_level_sums(const field_sample& field, besov_params params) {
    params.validate();
    if (params.level_max == 0) params.level_max = field.depth;
    if (params.level_max > field.depth)
        throw std::domain_error("requested level exceeds the field resolution");
    if (params.level_min < 1 || params.level_min > params.level_max)
        throw std::invalid_argument("level range is empty");
    if (params.direction < 1 || params.direction > field.dim)
        throw std::invalid_argument("direction must address a field coordinate");

    besov_level_sums out;
    out.params = params;
    out.dim = field.dim;

    double running = 0.0;
    for (int n = params.level_min; n <= params.level_max; ++n) {
        const int stride = 1 << (field.depth - n);
        const int cells = 1 << n;
        double v = 0.0;
        if (field.dim == 1) {
            for (int k = 0; k < cells; ++k)
                v += std::pow(std::abs(field.at((k + 1) * stride) - field.at(k * stride)),
                              params.p);
        } else {
            const bool along_x1 = params.direction == 1;
            for (int ki = 0; ki < cells; ++ki) {
                for (int kj = 0; kj <= cells; ++kj) {
                    const double lo = along_x1 ? field.at(ki * stride, kj * stride)
                                               : field.at(kj * stride, ki * stride);
                    const double hi = along_x1 ? field.at((ki + 1) * stride, kj * stride)
                                               : field.at(kj * stride, (ki + 1) * stride);
                    v += std::pow(std::abs(hi - lo), params.p);
                }
            }
        }
        const double w = std::exp2(n * (params.alpha * params.p - field.dim)) * v;
        running += w;
        out.levels.push_back(n);
        out.raw.push_back(v);
        out.weighted.push_back(w);
        out.cumulative.push_back(running);
    }

    out.all_zero = true;
    for (double w : out.weighted)
        if (w != 0.0) out.all_zero = false;
    if (!out.all_zero) {
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < out.levels.size(); ++i) {
            if (out.weighted[i] > 0.0) {
                xs.push_back(out.levels[i]);
                ys.push_back(std::log2(out.weighted[i]));
            }
        }
        if (xs.size() >= 2) {
            const auto fit = least_squares_line(xs, ys);
            out.slope = fit.slope;
            out.slope_stderr = fit.slope_stderr;
        }
    }
    return out;
}

struct membership_result {
    besov_verdict verdict = besov_verdict::inconclusive;
    double slope = 0.0;
    double slope_stderr = 0.0;
    std::vector<double> cumulative;
};

/// Three-way convergence verdict for the level-sum series, from the fitted
/// log2 slope: decaying levels mean the tail of sum_n W_n is summable at
/// geometric rate, growing levels mean divergence. A series whose terms are
/// identically zero converges trivially.
inline membership_result membership_diagnostic(const besov_level_sums& sums) {
    if (sums.levels.size() < 4)
        throw std::invalid_argument("membership diagnostic needs at least 4 levels");
    membership_result res;
    res.slope = sums.slope;
    res.slope_stderr = sums.slope_stderr;
    res.cumulative = sums.cumulative;
    const double margin = sums.params.slope_margin;
    if (sums.all_zero || sums.slope <= -margin)
        res.verdict = besov_verdict::convergent;
    else if (sums.slope >= margin)
        res.verdict = besov_verdict::divergent;
    else
        res.verdict = besov_verdict::inconclusive;
    return res;
}

namespace detail {

/// Uniform-grid view of a function on the unit cube: a path normalized to
/// [0,1], or a dyadic field. points = grid points per axis.
struct unit_grid_view {
    int dim = 1;
    int points = 2;
    const std::vector<double>* values = nullptr;

    int cells() const { return points - 1; }
    double step() const { return 1.0 / cells(); }
    double at(int i) const { return (*values)[static_cast<std::size_t>(i)]; }
    double at(int i, int j) const { return (*values)[static_cast<std::size_t>(i) * points + j]; }
};

inline unit_grid_view make_view(const path_sample& path) {
    return {1, static_cast<int>(path.values.size()), &path.values};
}

inline unit_grid_view make_view(const field_sample& field) {
    return {field.dim, field.points_per_axis(), &field.values};
}

/// (int_{I_h} |f(x+h) - f(x)|^p dx)^{1/p} for one grid shift, cell-tagged.
inline double shifted_difference_lp(const unit_grid_view& g, int m1, int m2, double p) {
    const int n = g.cells();
    double sum = 0.0;
    if (g.dim == 1) {
        for (int j = 0; j <= n - 1 - m1; ++j)
            sum += std::pow(std::abs(g.at(j + m1) - g.at(j)), p);
        sum *= g.step();
    } else {
        for (int i = 0; i <= n - 1 - m1; ++i)
            for (int j = 0; j <= n - 1 - m2; ++j)
                sum += std::pow(std::abs(g.at(i + m1, j + m2) - g.at(i, j)), p);
        sum *= g.step() * g.step();
    }
    return std::pow(sum, 1.0 / p);
}

/// L_p-modulus of continuity at radius r, with shifts restricted to grid
/// multiples: all of them in d=1; axis-aligned plus diagonal ones in d=2.
inline double modulus_on_grid(const unit_grid_view& g, double p, double r) {
    const double h = g.step();
    const int n = g.cells();
    double best = 0.0;
    const int m_axis = std::min(n, static_cast<int>(std::floor(r / h + 1e-12)));
    for (int m = 1; m <= m_axis; ++m) {
        best = std::max(best, shifted_difference_lp(g, m, 0, p));
        if (g.dim == 2) best = std::max(best, shifted_difference_lp(g, 0, m, p));
    }
    if (g.dim == 2) {
        const int m_diag =
            std::min(n, static_cast<int>(std::floor(r / (h * std::sqrt(2.0)) + 1e-12)));
        for (int m = 1; m <= m_diag; ++m)
            best = std::max(best, shifted_difference_lp(g, m, m, p));
    }
    return best;
}

inline double lp_norm(const unit_grid_view& g, double p) {
    const int n = g.cells();
    double sum = 0.0;
    if (g.dim == 1) {
        for (int j = 0; j < n; ++j) sum += std::pow(std::abs(g.at(j)), p);
        sum *= g.step();
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) sum += std::pow(std::abs(g.at(i, j)), p);
        sum *= g.step() * g.step();
    }
    return std::pow(sum, 1.0 / p);
}

inline std::vector<double> lp_modulus_impl(const unit_grid_view& g, double p,
                                           std::span<const double> r_values) {
    std::vector<double> out;
    out.reserve(r_values.size());
    for (double r : r_values) {
        if (!(r > 0.0 && r <= 1.0)) throw std::domain_error("modulus radius must lie in (0, 1]");
        out.push_back(modulus_on_grid(g, p, r));
    }
    return out;
}

/// ||f||_p + (int_0^1 omega_p(f,r)^q r^{-alpha q - 1} dr)^{1/q} with the
/// r-integral on a ratio-2 geometric grid: the panel (0, h] is evaluated at
/// its right end, every later panel at its arithmetic midpoint.
inline double besov_norm_impl(const unit_grid_view& g, double p, double q, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (!(p >= 1.0 && q >= 1.0)) throw std::invalid_argument("p, q must be >= 1");
    const double h = g.step();
    double integral = std::pow(modulus_on_grid(g, p, h), q) * std::pow(h, -alpha * q - 1.0) * h;
    double lo = h;
    while (lo < 1.0) {
        const double hi = std::min(1.0, 2.0 * lo);
        const double mid = 0.5 * (lo + hi);
        integral += std::pow(modulus_on_grid(g, p, mid), q) * std::pow(mid, -alpha * q - 1.0) *
                    (hi - lo);
        lo = hi;
    }
    return lp_norm(g, p) + std::pow(integral, 1.0 / q);
}

} // namespace detail

inline std::vector<double> lp_modulus(const path_sample& path, double p,
                                      std::span<const double> r_values) {
    return detail::lp_modulus_impl(detail::make_view(path), p, r_values);
}

inline std::vector<double> lp_modulus(const field_sample& field, double p,
                                      std::span<const double> r_values) {
    return detail::lp_modulus_impl(detail::make_view(field), p, r_values);
}

inline double besov_norm_estimate(const path_sample& path, double p, double q, double alpha) {
    return detail::besov_norm_impl(detail::make_view(path), p, q, alpha);
}

inline double besov_norm_estimate(const field_sample& field, double p, double q, double alpha) {
    return detail::besov_norm_impl(detail::make_view(field), p, q, alpha);
}

} // namespace smpath
