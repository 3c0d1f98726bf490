#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "smpath/integrate.hpp"
#include "smpath/model.hpp"
#include "smpath/parallel.hpp"
#include "smpath/quadrature.hpp"
#include "smpath/rng.hpp"
#include "smpath/sampling.hpp"
#include "smpath/stats.hpp"

namespace smpath {

/// Outcome of one verification run. Everything needed to recompute the pass
/// flag (statistics and thresholds) is stored, and the whole report is a
/// deterministic function of (test, parameters, master seed).
struct verification_report {
    std::string test;
    nlohmann::json parameters;
    int replicates = 0;
    std::uint64_t master_seed = 0;
    nlohmann::json statistics;
    nlohmann::json thresholds;
    bool pass = false;
    std::vector<std::string> replicate_columns;
    std::vector<std::vector<double>> replicate_rows;

    nlohmann::json to_json() const {
        return nlohmann::json{{"test", test},
                              {"parameters", parameters},
                              {"replicates", replicates},
                              {"master_seed", master_seed},
                              {"statistics", statistics},
                              {"thresholds", thresholds},
                              {"pass", pass}};
    }
};

// Monte Carlo defaults: 256 replicates, and statistical thresholds carry an
// additive slack of 0.01 to absorb estimator noise at that size.
inline constexpr int default_replicates = 256;
inline constexpr double mc_slack = 0.01;

// ---------------------------------------------------------------------------
// Paley-Zygmund: P[(sum lambda_k eps_k)^2 >= (1/4) sum lambda_k^2] >= 1/8.
// ---------------------------------------------------------------------------

/// Exact probability by enumerating all 2^m sign patterns (m <= 20), walking
/// them in Gray-code order so each step flips a single sign.
inline double paley_zygmund_exact(std::span<const double> lambdas) {
    const std::size_t m = lambdas.size();
    if (m == 0 || m > 20) throw std::invalid_argument("exact enumeration needs 1 <= m <= 20");
    double sum = 0.0, sq = 0.0;
    std::vector<int> sign(m, -1);
    for (std::size_t k = 0; k < m; ++k) {
        sum -= lambdas[k];
        sq += lambdas[k] * lambdas[k];
    }
    const double threshold = 0.25 * sq;
    const std::uint64_t total = 1ull << m;
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0;;) {
        if (sum * sum >= threshold) ++hits;
        if (++i == total) break;
        const unsigned bit = std::countr_zero(i);
        sign[bit] = -sign[bit];
        sum += 2.0 * sign[bit] * lambdas[bit];
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

inline verification_report paley_zygmund_check(const std::vector<double>& lambdas,
                                               int replicates, rng_stream stream) {
    if (lambdas.empty()) throw std::invalid_argument("lambda vector must be nonempty");
    verification_report rep;
    rep.test = "paley_zygmund";
    rep.parameters = {{"m", lambdas.size()}, {"lambdas", lambdas}};
    rep.replicates = replicates;
    rep.master_seed = stream.master_seed;

    double sq = 0.0;
    for (double l : lambdas) sq += l * l;
    const double threshold = 0.25 * sq;

    double estimate = std::numeric_limits<double>::quiet_NaN();
    if (replicates > 0) {
        std::size_t hits = 0;
        rep.replicate_columns = {"squared_sum", "hit"};
        rep.replicate_rows.resize(replicates);
        for (int r = 0; r < replicates; ++r) {
            rng_engine eng(stream.substream(static_cast<std::uint64_t>(r)));
            double s = 0.0;
            for (double l : lambdas) s += l * eng.sign();
            const bool hit = s * s >= threshold;
            hits += hit;
            rep.replicate_rows[r] = {s * s, hit ? 1.0 : 0.0};
        }
        estimate = static_cast<double>(hits) / replicates;
    }

    const bool enumerable = lambdas.size() <= 20;
    const double exact = enumerable ? paley_zygmund_exact(lambdas)
                                    : std::numeric_limits<double>::quiet_NaN();

    rep.statistics = {{"threshold_rhs", threshold}};
    if (replicates > 0) rep.statistics["estimate"] = estimate;
    if (enumerable) rep.statistics["exact"] = exact;
    rep.thresholds = {{"lower_bound", 0.125}, {"mc_slack", mc_slack}};
    rep.pass = enumerable ? exact >= 0.125 : estimate >= 0.125 - mc_slack;
    return rep;
}

/// Uniform nonzero lambda vector in [-1,1]^m for randomized sweeps.
inline std::vector<double> random_lambdas(int m, rng_stream stream) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    rng_engine eng(stream);
    std::vector<double> l(m);
    for (;;) {
        double sq = 0.0;
        for (auto& x : l) {
            x = 2.0 * eng.uniform01() - 1.0;
            sq += x * x;
        }
        if (sq > 0.0) return l;
    }
}

// ---------------------------------------------------------------------------
// Sum-of-squares diagnostics: T_j = sum_{k<=j} (int f_k dmu)^2 for families
// with a certified bound sup_x sum_k f_k(x)^2.
// ---------------------------------------------------------------------------

struct function_family {
    std::string name;
    double sq_sum_bound = std::numeric_limits<double>::quiet_NaN();
    std::function<double(int, double)> eval; // f_k(t), k >= 1

    /// Optional fast route: out[k-1] = sum_j f_k(tags[j]) * dmu[j] for all k.
    std::function<void(std::span<const double>, std::span<const double>, std::span<double>)>
        integrate_all;
};

/// f_k(t) = sin(kt) / (pi k); sup_t sum_k f_k^2 <= (1/pi^2) sum 1/k^2 = 1/6.
inline function_family sine_over_pik_family() {
    function_family fam;
    fam.name = "sine_over_pik";
    fam.sq_sum_bound = 1.0 / 6.0;
    fam.eval = [](int k, double t) { return std::sin(k * t) / (std::numbers::pi * k); };
    fam.integrate_all = [](std::span<const double> tags, std::span<const double> dmu,
                           std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
        for (std::size_t j = 0; j < tags.size(); ++j) {
            const double zr = std::cos(tags[j]), zi = std::sin(tags[j]);
            const double d = dmu[j];
            double wr = 1.0, wi = 0.0;
            for (std::size_t k = 0; k < out.size(); ++k) {
                const double nr = wr * zr - wi * zi;
                wi = wr * zi + wi * zr;
                wr = nr;
                out[k] += wi * d;
            }
        }
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] /= std::numbers::pi * static_cast<double>(k + 1);
    };
    return fam;
}

inline function_family zero_family() {
    function_family fam;
    fam.name = "zero";
    fam.sq_sum_bound = 0.0;
    fam.eval = [](int, double) { return 0.0; };
    return fam;
}

inline verification_report sum_squares_check(const sm_model& model, const function_family& family,
                                             std::vector<int> j_levels, int replicates,
                                             rng_stream stream, int grid_size = 1 << 13,
                                             int threads = 1) {
    if (!std::isfinite(family.sq_sum_bound) || family.sq_sum_bound < 0.0)
        throw std::invalid_argument("function family lacks a certified square-sum bound");
    if (j_levels.empty() || replicates < 1)
        throw std::invalid_argument("need at least one j level and one replicate");
    for (std::size_t i = 0; i + 1 < j_levels.size(); ++i)
        if (j_levels[i] >= j_levels[i + 1])
            throw std::invalid_argument("j levels must be strictly increasing");
    if (j_levels.front() < 1) throw std::invalid_argument("j levels must be >= 1");

    const int j_max = j_levels.back();
    path_sampler sampler(model, grid_size);

    verification_report rep;
    rep.test = "sum_squares";
    rep.parameters = {{"model", kind_name(model.kind)},
                      {"family", family.name},
                      {"sq_sum_bound", family.sq_sum_bound},
                      {"j_levels", j_levels},
                      {"grid", grid_size}};
    rep.replicates = replicates;
    rep.master_seed = stream.master_seed;
    for (int j : j_levels) rep.replicate_columns.push_back("T_" + std::to_string(j));
    rep.replicate_rows.resize(replicates);

    parallel_for(replicates, threads, [&](std::size_t r) {
        const auto path = sampler.sample(stream.substream(r));
        const std::size_t n = path.grid.size() - 1;
        std::vector<double> tags(n), dmu(n);
        for (std::size_t j = 0; j < n; ++j) {
            tags[j] = path.grid[j];
            dmu[j] = path.values[j + 1] - path.values[j];
        }
        std::vector<double> integrals(j_max, 0.0);
        if (family.integrate_all) {
            family.integrate_all(tags, dmu, integrals);
        } else {
            for (int k = 1; k <= j_max; ++k) {
                double s = 0.0;
                for (std::size_t j = 0; j < n; ++j) s += family.eval(k, tags[j]) * dmu[j];
                integrals[k - 1] = s;
            }
        }
        std::vector<double> row;
        row.reserve(j_levels.size());
        double acc = 0.0;
        std::size_t next = 0;
        for (int k = 1; k <= j_max; ++k) {
            acc += integrals[k - 1] * integrals[k - 1];
            if (next < j_levels.size() && k == j_levels[next]) {
                row.push_back(acc);
                ++next;
            }
        }
        rep.replicate_rows[r] = std::move(row);
    });

    nlohmann::json quantiles = nlohmann::json::array();
    std::vector<double> q90(j_levels.size());
    for (std::size_t c = 0; c < j_levels.size(); ++c) {
        std::vector<double> col(replicates);
        for (int r = 0; r < replicates; ++r) col[r] = rep.replicate_rows[r][c];
        q90[c] = quantile(col, 0.9);
        quantiles.push_back({{"j", j_levels[c]}, {"q90", q90[c]}, {"median", median(col)}});
    }
    rep.statistics = {{"per_level", quantiles}};
    if (j_levels.size() >= 2) {
        const double gap = q90.back() - q90[q90.size() - 2];
        const double limit = 0.1 * q90[q90.size() - 2] + mc_slack;
        rep.statistics["stabilization_gap"] = gap;
        rep.thresholds = {{"gap_relative", 0.1}, {"gap_absolute", mc_slack}};
        rep.pass = gap <= limit;
    } else {
        rep.pass = true;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Cubic increment integral: int_0^{T1} |mu(s+eps) - mu(s)|^3 / eps ds should
// shrink as eps -> 0 for continuous-path models.
// ---------------------------------------------------------------------------

inline double cubic_increment_integral(const path_sample& path, double t1, double eps) {
    if (!(eps > 0.0) || t1 + eps > path.horizon() + 1e-12)
        throw std::domain_error("need T1 + eps <= T");
    const double h = path.step();
    auto g = [&](double s) {
        const double d = std::abs(path.value_at(s + eps) - path.value_at(s));
        return d * d * d / eps;
    };
    double integral = 0.0;
    double s = 0.0;
    double gs = g(0.0);
    while (s < t1) {
        const double s_next = std::min(t1, s + h);
        const double gn = g(s_next);
        integral += 0.5 * (gs + gn) * (s_next - s);
        s = s_next;
        gs = gn;
    }
    return integral;
}

inline verification_report cubic_increment_check(const sm_model& model, double t1,
                                                 std::vector<double> epsilons, int replicates,
                                                 rng_stream stream, int grid_size = 1 << 11,
                                                 int threads = 1) {
    if (epsilons.empty()) throw std::invalid_argument("need at least one epsilon");
    double max_eps = 0.0;
    for (double e : epsilons) {
        if (!(e > 0.0)) throw std::invalid_argument("epsilons must be positive");
        max_eps = std::max(max_eps, e);
    }
    if (!(t1 > 0.0 && t1 + max_eps <= model.horizon))
        throw std::invalid_argument("need 0 < T1 and T1 + max(eps) <= T");
    const double step = model.horizon / grid_size;
    for (double e : epsilons)
        if (step > e / 16.0)
            throw std::invalid_argument("grid step must be <= eps/16 to resolve increments");

    path_sampler sampler(model, grid_size);

    verification_report rep;
    rep.test = "cubic_increment";
    rep.parameters = {{"model", kind_name(model.kind)},
                      {"T1", t1},
                      {"epsilons", epsilons},
                      {"grid", grid_size}};
    rep.replicates = replicates;
    rep.master_seed = stream.master_seed;
    for (double e : epsilons) rep.replicate_columns.push_back("I_eps_" + std::to_string(e));
    rep.replicate_rows.resize(replicates);

    parallel_for(replicates, threads, [&](std::size_t r) {
        const auto path = sampler.sample(stream.substream(r));
        std::vector<double> row;
        row.reserve(epsilons.size());
        for (double e : epsilons) row.push_back(cubic_increment_integral(path, t1, e));
        rep.replicate_rows[r] = std::move(row);
    });

    nlohmann::json per_eps = nlohmann::json::array();
    std::vector<double> medians(epsilons.size());
    for (std::size_t c = 0; c < epsilons.size(); ++c) {
        std::vector<double> col(replicates);
        for (int r = 0; r < replicates; ++r) col[r] = rep.replicate_rows[r][c];
        medians[c] = median(col);
        per_eps.push_back({{"eps", epsilons[c]}, {"median", medians[c]}, {"mean", mean(col)}});
    }
    bool monotone = true;
    for (std::size_t c = 0; c + 1 < medians.size(); ++c)
        if (!(medians[c + 1] < medians[c])) monotone = false;
    rep.statistics = {{"per_eps", per_eps}, {"medians_decreasing", monotone}};
    rep.thresholds = {{"require", "medians strictly decreasing along the eps schedule"}};
    rep.pass = monotone;
    return rep;
}

// ---------------------------------------------------------------------------
// The sharp constant in u^m <= C_{k,lambda} 2^{lambda u}, m = 2 k^{1/3} - 1.
// ---------------------------------------------------------------------------

struct exp_moment {
    double constant = 0.0;  // C_{k,lambda}
    double maximizer = 0.0; // u* = m / (lambda ln 2)
    double power = 0.0;     // m
};

inline exp_moment exp_moment_constant(int k, double lambda) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    exp_moment out;
    out.power = 2.0 * std::cbrt(static_cast<double>(k)) - 1.0;
    out.maximizer = out.power / (lambda * std::numbers::ln2);
    out.constant = std::pow(out.maximizer, out.power) * std::exp2(-out.power / std::numbers::ln2);
    return out;
}

struct exp_moment_sharpness {
    double grid_max = 0.0;
    double argmax = 0.0;
};

/// max over a u-grid (the analytic maximizer included) of u^m 2^{-lambda u};
/// used to confirm that C_{k,lambda} is attained and sharp.
inline exp_moment_sharpness exp_moment_grid_max(int k, double lambda, int points = 10000) {
    const auto cm = exp_moment_constant(k, lambda);
    const double hi = std::max(4.0 * cm.maximizer, 1.0);
    exp_moment_sharpness s;
    auto consider = [&](double u) {
        const double v = std::pow(u, cm.power) * std::exp2(-lambda * u);
        if (v > s.grid_max) {
            s.grid_max = v;
            s.argmax = u;
        }
    };
    for (int i = 0; i <= points; ++i) consider(hi * i / points);
    consider(cm.maximizer);
    return s;
}

// ---------------------------------------------------------------------------
// Hoelder bound for the Rademacher density: for f on [0,1],
//   int |f| x^{c_k - 1} dx <= 2 k^{1/3} (int |f|^m dx)^{1/m},
// plus the pointwise bound |f|^m <= C_{k,lambda} 2^{lambda |f|}.
// ---------------------------------------------------------------------------

inline verification_report holder_bound_check(const integrand_spec& f, int k, double lambda,
                                              const quad_config& cfg = {},
                                              int grid_points = 10000) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    if (!f.sup_bound)
        throw std::invalid_argument(
            "holder_bound_check needs an integrand with a certified sup bound");

    const double kroot = std::cbrt(static_cast<double>(k));
    const double c = 1.0 / kroot;
    const double m = 2.0 * kroot - 1.0;
    auto abs_f = [&](double x) { return std::abs(f(x)); };

    const double lhs = singular_weight_quadrature(abs_f, c, 0.0, 1.0, cfg);
    const double moment = adaptive_quadrature(
        [&](double x) { return std::pow(std::abs(f(x)), m); }, 0.0, 1.0, cfg);
    const double rhs = 2.0 * kroot * (moment > 0.0 ? std::pow(moment, 1.0 / m) : 0.0);

    const auto cm = exp_moment_constant(k, lambda);
    double max_ratio = 0.0;
    bool pointwise_ok = true;
    bool equality_ok = true;
    for (int i = 0; i <= grid_points; ++i) {
        const double u = std::abs(f(static_cast<double>(i) / grid_points));
        const double bound = cm.constant * std::exp2(lambda * u);
        const double val = std::pow(u, m);
        if (val > bound * (1.0 + 1e-9)) pointwise_ok = false;
        if (bound > 0.0) max_ratio = std::max(max_ratio, val / bound);
        if (std::abs(u - cm.maximizer) <= 1e-12 * std::max(1.0, cm.maximizer) &&
            std::abs(val / bound - 1.0) > 1e-9)
            equality_ok = false;
    }

    verification_report rep;
    rep.test = "holder_bound";
    rep.parameters = {{"integrand", f.description}, {"k", k}, {"lambda", lambda}};
    rep.statistics = {{"lhs", lhs},
                      {"rhs", rhs},
                      {"constant", cm.constant},
                      {"maximizer", cm.maximizer},
                      {"power", m},
                      {"max_pointwise_ratio", max_ratio}};
    rep.thresholds = {{"inequality_slack_rel", 1e-8}, {"pointwise_slack_rel", 1e-9}};
    const bool integral_ok = lhs <= rhs * (1.0 + 1e-8) + 1e-15;
    rep.pass = integral_ok && pointwise_ok && equality_ok;
    rep.statistics["integral_ok"] = integral_ok;
    rep.statistics["pointwise_ok"] = pointwise_ok;
    return rep;
}

} // namespace smpath
