#pragma once

#include <cmath>
#include <vector>

#include "smpath/common.hpp"

namespace smpath {

struct quad_config {
    double abs_tol = 1e-10;
    int max_subdivisions = 1 << 20;
};

namespace detail {

struct simpson_panel {
    double a, b;
    double fa, fm, fb;
    double estimate; // Simpson value on [a,b]
    int depth;
};

template <class F>
simpson_panel make_panel(F& f, double a, double b, double fa, double fb, int depth) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    return {a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), depth};
}

} // namespace detail

/// Adaptive composite Simpson quadrature of f over [a, b] to absolute
/// tolerance cfg.abs_tol. The interval starts from panels with irrationally
/// staggered boundaries (golden-ratio offsets) and every panel is bisected
/// at least twice, so a periodic or symmetric integrand cannot sit
/// coherently on the sample nodes and fake convergence. Panels are bisected
/// further wherever |S2 - S1|/15 exceeds their width-proportional share of
/// the tolerance; accepted panels use the Richardson-extrapolated value.
///
/// Throws accuracy_error (carrying the achieved error estimate) if the
/// subdivision budget runs out before the tolerance is met.
template <class F>
double adaptive_quadrature(F&& f, double a, double b, const quad_config& cfg = {}) {
    if (!(cfg.abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be positive");
    if (a == b) return 0.0;
    if (!(a < b)) throw std::domain_error("quadrature interval must satisfy a <= b");

    const double width = b - a;
    constexpr int min_depth = 2;
    // irrational interior boundaries (golden-ratio multiples, sorted)
    constexpr double stagger[] = {0.09016994374947451, 0.2360679774997898,
                                  0.3819660112501051, 0.4721359549995796,
                                  0.6180339887498949, 0.7639320225002102,
                                  0.8541019662496847};

    std::vector<detail::simpson_panel> stack;
    stack.reserve(64);
    double lo = a;
    double fl = f(a);
    for (int i = 0; i <= 7; ++i) {
        const double hi = (i == 7) ? b : a + width * stagger[i];
        const double fr = f(hi);
        stack.push_back(detail::make_panel(f, lo, hi, fl, fr, 0));
        lo = hi;
        fl = fr;
    }

    double total = 0.0;
    double err_accepted = 0.0;
    int subdivisions = 8;
    bool budget_ok = true;

    while (!stack.empty()) {
        detail::simpson_panel p = stack.back();
        stack.pop_back();
        const double m = 0.5 * (p.a + p.b);
        auto left = detail::make_panel(f, p.a, m, p.fa, p.fm, p.depth + 1);
        auto right = detail::make_panel(f, m, p.b, p.fm, p.fb, p.depth + 1);
        const double s2 = left.estimate + right.estimate;
        const double err = (s2 - p.estimate) / 15.0;
        const double share = cfg.abs_tol * (p.b - p.a) / width;
        const bool converged = (p.depth >= min_depth && std::abs(err) <= share) ||
                               (p.b - p.a) < 1e-15 * width;
        if (converged || !budget_ok) {
            total += s2 + err;
            err_accepted += std::abs(err);
        } else {
            subdivisions += 2;
            if (subdivisions > cfg.max_subdivisions) budget_ok = false;
            stack.push_back(left);
            stack.push_back(right);
        }
    }

    if (!budget_ok && err_accepted > cfg.abs_tol)
        throw accuracy_error("adaptive quadrature exhausted its subdivision budget", err_accepted);
    return total;
}

/// int_a^b f(x) x^{c-1} dx for c in (0,1], 0 <= a <= b <= 1.
///
/// The substitution u = x^c turns the integrand into (1/c) f(u^{1/c}), which
/// removes the endpoint singularity at 0 before any quadrature runs.
template <class F>
double singular_weight_quadrature(F&& f, double c, double a, double b, const quad_config& cfg = {}) {
    if (!(c > 0.0 && c <= 1.0)) throw std::domain_error("weight exponent c must lie in (0, 1]");
    if (!(0.0 <= a && a <= b && b <= 1.0))
        throw std::domain_error("interval must satisfy 0 <= a <= b <= 1");
    if (a == b) return 0.0;
    const double inv_c = 1.0 / c;
    auto transformed = [&](double u) { return f(std::pow(u, inv_c)); };
    return inv_c * adaptive_quadrature(transformed, std::pow(a, c), std::pow(b, c), cfg);
}

} // namespace smpath
