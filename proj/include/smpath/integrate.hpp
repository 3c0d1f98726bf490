#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "smpath/model.hpp"
#include "smpath/quadrature.hpp"
#include "smpath/sampling.hpp"

namespace smpath {

/// A deterministic integrand: a total real function on the integration
/// interval, a label for reports, and an optional certified sup bound
/// (needed by checks that require integrability of 2^{lambda |f|}).
struct integrand_spec {
    std::function<double(double)> evaluator;
    std::string description;
    std::optional<double> sup_bound;

    double operator()(double x) const { return evaluator(x); }
};

struct interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

namespace integrands {

inline integrand_spec constant(double v) {
    return {[v](double) { return v; }, "const(" + std::to_string(v) + ")", std::abs(v)};
}

inline integrand_spec identity() {
    return {[](double x) { return x; }, "x", std::nullopt};
}

inline integrand_spec monomial(int degree) {
    return {[degree](double x) { return std::pow(x, degree); },
            "x^" + std::to_string(degree), std::nullopt};
}

inline integrand_spec polynomial(std::vector<double> coeffs) {
    return {[c = std::move(coeffs)](double x) {
                double acc = 0.0;
                for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
                return acc;
            },
            "poly", std::nullopt};
}

inline integrand_spec sin_k(double k) {
    return {[k](double x) { return std::sin(k * x); }, "sin(" + std::to_string(k) + "x)", 1.0};
}

inline integrand_spec cos_k(double k) {
    return {[k](double x) { return std::cos(k * x); }, "cos(" + std::to_string(k) + "x)", 1.0};
}

/// Indicator of (a, b].
inline integrand_spec indicator(double a, double b) {
    return {[a, b](double x) { return (x > a && x <= b) ? 1.0 : 0.0; }, "indicator", 1.0};
}

/// CLI-addressable catalogue. Names: const, identity, monomial, sin, cos,
/// indicator, zero, one.
inline integrand_spec by_name(const std::string& name, const std::vector<double>& params = {}) {
    auto need = [&](std::size_t n) {
        if (params.size() != n)
            throw std::invalid_argument("integrand '" + name + "' expects " + std::to_string(n) +
                                        " parameter(s)");
    };
    if (name == "zero") { need(0); return constant(0.0); }
    if (name == "one") { need(0); return constant(1.0); }
    if (name == "const") { need(1); return constant(params[0]); }
    if (name == "identity" || name == "x") { need(0); return identity(); }
    if (name == "monomial") { need(1); return monomial(static_cast<int>(params[0])); }
    if (name == "sin") { need(1); return sin_k(params[0]); }
    if (name == "cos") { need(1); return cos_k(params[0]); }
    if (name == "indicator") { need(2); return indicator(params[0], params[1]); }
    throw std::invalid_argument("unknown integrand '" + name + "'");
}

} // namespace integrands

/// int_A f dmu for the Rademacher model, term by term through the exact
/// series: sum_k eps_k k^{-4/3} int_{A/T} f(Tx) x^{c_k - 1} dx. The absolute
/// error is at most K * cfg.abs_tol.
inline double integrate_rademacher(const rademacher_realization& r, const integrand_spec& f,
                                   interval A, const quad_config& cfg = {}) {
    if (!(0.0 <= A.lo && A.lo <= A.hi && A.hi <= r.horizon))
        throw std::domain_error("integration interval must lie inside (0, T]");
    const double T = r.horizon;
    auto scaled = [&](double x) { return f(T * x); };
    double sum = 0.0;
    for (int k = 0; k < r.truncation(); ++k)
        sum += r.signs[k] * r.weights[k] *
               singular_weight_quadrature(scaled, r.exponents[k], A.lo / T, A.hi / T, cfg);
    return sum;
}

/// Left-tagged Riemann-Stieltjes sum sum_j f(t_j) (mu(t_{j+1}) - mu(t_j))
/// over the path's own grid.
inline double integrate_grid(const path_sample& path, const integrand_spec& f) {
    if (path.grid.size() < 2) throw std::invalid_argument("path needs at least 2 grid points");
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < path.grid.size(); ++j)
        sum += f(path.grid[j]) * (path.values[j + 1] - path.values[j]);
    return sum;
}

/// Piecewise-constant function: value levels[i] on (breakpoints[i], breakpoints[i+1]].
struct step_function {
    std::vector<double> breakpoints; // size = pieces + 1, strictly increasing
    std::vector<double> levels;

    void validate(double domain_hi) const {
        if (breakpoints.size() != levels.size() + 1 || levels.empty())
            throw std::invalid_argument("step function needs n+1 breakpoints for n levels");
        for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
            if (!(breakpoints[i] < breakpoints[i + 1]))
                throw std::invalid_argument("breakpoints must be strictly increasing");
        if (breakpoints.front() < 0.0 || breakpoints.back() > domain_hi)
            throw std::invalid_argument("breakpoints outside the domain");
    }
};

struct step_integral_result {
    double value = 0.0;
    double max_snap_distance = 0.0; // grid models only
};

/// Exact integral of a step function against a Rademacher realization:
/// sum_i level_i * mu((b_i, b_{i+1}]).
inline step_integral_result integrate_step_function(const rademacher_realization& r,
                                                    const step_function& s) {
    s.validate(r.horizon);
    step_integral_result out;
    for (std::size_t i = 0; i < s.levels.size(); ++i)
        out.value += s.levels[i] * r.interval_measure(s.breakpoints[i], s.breakpoints[i + 1]);
    return out;
}

/// Step-function integral against a grid-sampled path. Breakpoints are
/// snapped to the nearest grid point; the largest snap distance is reported.
inline step_integral_result integrate_step_function(const path_sample& path,
                                                    const step_function& s) {
    s.validate(path.horizon());
    const double h = path.step();
    step_integral_result out;
    auto snap = [&](double b) {
        long idx = std::lround(b / h);
        idx = std::max(0L, std::min(static_cast<long>(path.steps()), idx));
        out.max_snap_distance = std::max(out.max_snap_distance, std::abs(b - idx * h));
        return static_cast<std::size_t>(idx);
    };
    for (std::size_t i = 0; i < s.levels.size(); ++i) {
        const auto lo = snap(s.breakpoints[i]);
        const auto hi = snap(s.breakpoints[i + 1]);
        out.value += s.levels[i] * (path.values[hi] - path.values[lo]);
    }
    return out;
}

} // namespace smpath
