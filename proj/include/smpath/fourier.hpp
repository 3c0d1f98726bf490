#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "smpath/integrate.hpp"
#include "smpath/model.hpp"
#include "smpath/quadrature.hpp"
#include "smpath/sampling.hpp"

namespace smpath {

enum class coeff_method { by_parts, direct };

/// Fourier coefficients of mu(t) on [0, 2pi]:
///   mu(t) ~ xi_0/2 + sum_k (xi_k cos kt + eta_k sin kt).
struct fourier_coefficients {
    int max_k = 0;
    std::vector<double> xi;  // xi_0 .. xi_K
    std::vector<double> eta; // eta_0 (unused, 0) .. eta_K
    coeff_method method = coeff_method::by_parts;
    std::string provenance;
    bool aliasing_warning = false;

    /// sum_{1 <= k <= n} (xi_k^2 + eta_k^2).
    double energy(int n) const {
        if (n > max_k) throw std::domain_error("energy order exceeds K");
        double e = 0.0;
        for (int k = 1; k <= n; ++k) e += xi[k] * xi[k] + eta[k] * eta[k];
        return e;
    }
};

namespace detail {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline void require_two_pi_horizon(double T) {
    if (std::abs(T / two_pi - 1.0) > 1e-9)
        throw std::invalid_argument("Fourier expansion requires horizon T = 2*pi");
}

} // namespace detail

/// Coefficients through the integration-by-parts identities
///   xi_k  = -(1/(k pi)) int sin ks dmu
///   eta_k =  (1/(k pi)) int (cos ks - 1) dmu
///   xi_0  =  2 mu((0,2pi]) - (1/pi) int s dmu,
/// with the integrals taken against the exact Rademacher series.
inline fourier_coefficients coefficients_by_parts(const rademacher_realization& r, int K,
                                                  const quad_config& cfg = {},
                                                  std::string provenance = {}) {
    detail::require_two_pi_horizon(r.horizon);
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    fourier_coefficients c;
    c.max_k = K;
    c.method = coeff_method::by_parts;
    c.provenance = provenance.empty()
                       ? "rademacher-series K=" + std::to_string(r.truncation())
                       : std::move(provenance);
    c.xi.assign(K + 1, 0.0);
    c.eta.assign(K + 1, 0.0);
    const double pi = std::numbers::pi;
    const interval full{0.0, r.horizon};
    const double mass = r.total_mass();
    c.xi[0] = 2.0 * mass - integrate_rademacher(r, integrands::identity(), full, cfg) / pi;
    for (int k = 1; k <= K; ++k) {
        const double kk = k;
        const double s_int = integrate_rademacher(r, integrands::sin_k(kk), full, cfg);
        auto cos_m1 = integrand_spec{[kk](double x) { return std::cos(kk * x) - 1.0; },
                                     "cos-1", 2.0};
        const double c_int = integrate_rademacher(r, cos_m1, full, cfg);
        c.xi[k] = -s_int / (kk * pi);
        c.eta[k] = c_int / (kk * pi);
    }
    return c;
}

/// Same identities for a sampled path. The deterministic Lebesgue model has
/// density 1, so its integrals run through adaptive quadrature at cfg.abs_tol;
/// every other kind uses the left-tagged Riemann-Stieltjes sums on the grid.
inline fourier_coefficients coefficients_by_parts(const path_sample& path, int K,
                                                  const quad_config& cfg = {}) {
    detail::require_two_pi_horizon(path.horizon());
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    fourier_coefficients c;
    c.max_k = K;
    c.method = coeff_method::by_parts;
    c.provenance = path.descriptor();
    c.xi.assign(K + 1, 0.0);
    c.eta.assign(K + 1, 0.0);
    const double pi = std::numbers::pi;
    const double T = path.horizon();
    const double mass = path.values.back();

    if (path.model.kind == sm_kind::deterministic_lebesgue) {
        c.xi[0] = 2.0 * mass -
                  adaptive_quadrature([](double s) { return s; }, 0.0, T, cfg) / pi;
        for (int k = 1; k <= K; ++k) {
            const double kk = k;
            const double s_int =
                adaptive_quadrature([kk](double s) { return std::sin(kk * s); }, 0.0, T, cfg);
            const double c_int = adaptive_quadrature(
                [kk](double s) { return std::cos(kk * s) - 1.0; }, 0.0, T, cfg);
            c.xi[k] = -s_int / (kk * pi);
            c.eta[k] = c_int / (kk * pi);
        }
        return c;
    }

    // One pass over the increments; powers of e^{i t_j} give sin/cos of all
    // orders k without per-term trig calls.
    std::vector<double> sin_sum(K + 1, 0.0), cos_sum(K + 1, 0.0);
    double s_dmu = 0.0;
    const std::size_t n = path.grid.size() - 1;
    for (std::size_t j = 0; j < n; ++j) {
        const double t = path.grid[j];
        const double dmu = path.values[j + 1] - path.values[j];
        s_dmu += t * dmu;
        const double zr = std::cos(t), zi = std::sin(t);
        double wr = 1.0, wi = 0.0;
        for (int k = 1; k <= K; ++k) {
            const double nr = wr * zr - wi * zi;
            wi = wr * zi + wi * zr;
            wr = nr;
            sin_sum[k] += wi * dmu;
            cos_sum[k] += (wr - 1.0) * dmu;
        }
    }
    c.xi[0] = 2.0 * mass - s_dmu / pi;
    for (int k = 1; k <= K; ++k) {
        c.xi[k] = -sin_sum[k] / (k * pi);
        c.eta[k] = cos_sum[k] / (k * pi);
    }
    return c;
}

/// Direct definition: xi_k = (1/pi) int mu(s) cos ks ds and
/// eta_k = (1/pi) int mu(s) sin ks ds, by the trapezoid rule on the path
/// grid. Orders above the grid's comfortable resolution (K > n/4) are
/// flagged as aliased in the provenance.
inline fourier_coefficients coefficients_direct(const path_sample& path, int K) {
    detail::require_two_pi_horizon(path.horizon());
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    fourier_coefficients c;
    c.max_k = K;
    c.method = coeff_method::direct;
    c.provenance = path.descriptor();
    c.xi.assign(K + 1, 0.0);
    c.eta.assign(K + 1, 0.0);
    const std::size_t n = path.grid.size() - 1;
    if (K > static_cast<int>(n) / 4) {
        c.aliasing_warning = true;
        c.provenance += " [aliasing: K above grid Nyquist margin]";
    }
    const double h = path.step();
    const double pi = std::numbers::pi;
    for (std::size_t j = 0; j <= n; ++j) {
        const double w = (j == 0 || j == n) ? 0.5 * h : h;
        const double f = w * path.values[j];
        c.xi[0] += f;
        const double t = path.grid[j];
        const double zr = std::cos(t), zi = std::sin(t);
        double wr = 1.0, wi = 0.0;
        for (int k = 1; k <= K; ++k) {
            const double nr = wr * zr - wi * zi;
            wi = wr * zi + wi * zr;
            wr = nr;
            c.xi[k] += f * wr;
            c.eta[k] += f * wi;
        }
    }
    for (int k = 0; k <= K; ++k) {
        c.xi[k] /= pi;
        if (k > 0) c.eta[k] /= pi;
    }
    return c;
}

/// S_n(t) = xi_0/2 + sum_{k<=n} (xi_k cos kt + eta_k sin kt). Evaluation
/// wraps t by 2pi-periodicity, so S_n(2pi) == S_n(0) holds bit-exactly.
inline double partial_sum(const fourier_coefficients& c, int n, double t) {
    if (n < 0 || n > c.max_k) throw std::domain_error("partial sum order exceeds K");
    if (std::abs(t) >= detail::two_pi) t = std::fmod(t, detail::two_pi);
    double s = 0.5 * c.xi[0];
    for (int k = 1; k <= n; ++k)
        s += c.xi[k] * std::cos(k * t) + c.eta[k] * std::sin(k * t);
    return s;
}

/// S_n^*(t) = (S_{n-1}(t) + S_n(t)) / 2.
inline double delayed_mean_partial_sum(const fourier_coefficients& c, int n, double t) {
    if (n < 1) throw std::domain_error("delayed mean needs n >= 1");
    const double sn = partial_sum(c, n, t);
    if (std::abs(t) >= detail::two_pi) t = std::fmod(t, detail::two_pi);
    return sn - 0.5 * (c.xi[n] * std::cos(n * t) + c.eta[n] * std::sin(n * t));
}

/// The mass-normalization device: mu~(A) = mu(A) - m_L(A) mu((0,2pi])/(2pi),
/// i.e. the path minus its linear drift, so that mu~((0,2pi]) = 0.
inline path_sample centered_path(const path_sample& path) {
    path_sample out = path;
    const double slope = path.values.back() / path.horizon();
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] -= slope * out.grid[i];
    return out;
}

struct convergence_entry {
    int n = 0;
    double sup_interior_error = 0.0;
    double endpoint_error = 0.0;
    double energy = 0.0;
};

/// For each requested order n: the sup over grid points t in
/// [margin, 2pi - margin] of |S_n(t) - mu(t)|, the endpoint defect
/// |S_n(0) - mu(2pi)/2|, and the coefficient energy up to n.
inline std::vector<convergence_entry> convergence_report(const path_sample& path,
                                                         const fourier_coefficients& c,
                                                         std::span<const int> n_list,
                                                         double interior_margin = 0.5) {
    if (c.provenance != path.descriptor())
        throw std::invalid_argument("coefficients and path do not share provenance");
    if (!(interior_margin >= 0.0 && 2.0 * interior_margin < path.horizon()))
        throw std::invalid_argument("interior margin leaves no interior");
    std::vector<int> orders(n_list.begin(), n_list.end());
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] < 0 || orders[i] > c.max_k)
            throw std::domain_error("requested order exceeds K");
        if (i > 0 && orders[i] <= orders[i - 1])
            throw std::invalid_argument("orders must be strictly increasing");
    }

    const std::size_t npts = path.grid.size();
    std::vector<std::size_t> interior;
    for (std::size_t i = 0; i < npts; ++i)
        if (path.grid[i] >= interior_margin && path.grid[i] <= path.horizon() - interior_margin)
            interior.push_back(i);

    // Running S_n at every interior grid point and at t = 0, advanced one
    // order at a time; snapshots are taken at the requested orders.
    std::vector<double> s(interior.size(), 0.5 * c.xi[0]);
    std::vector<double> wr(interior.size(), 1.0), wi(interior.size(), 0.0);
    std::vector<double> zr(interior.size()), zi(interior.size());
    for (std::size_t i = 0; i < interior.size(); ++i) {
        zr[i] = std::cos(path.grid[interior[i]]);
        zi[i] = std::sin(path.grid[interior[i]]);
    }
    double s_zero = 0.5 * c.xi[0];
    double energy = 0.0;
    const double half_mass = 0.5 * path.values.back();

    std::vector<convergence_entry> report;
    std::size_t next = 0;
    for (int k = 0; k <= c.max_k && next < orders.size(); ++k) {
        if (k >= 1) {
            for (std::size_t i = 0; i < interior.size(); ++i) {
                const double nr = wr[i] * zr[i] - wi[i] * zi[i];
                wi[i] = wr[i] * zi[i] + wi[i] * zr[i];
                wr[i] = nr;
                s[i] += c.xi[k] * wr[i] + c.eta[k] * wi[i];
            }
            s_zero += c.xi[k];
            energy += c.xi[k] * c.xi[k] + c.eta[k] * c.eta[k];
        }
        if (k == orders[next]) {
            convergence_entry e;
            e.n = k;
            for (std::size_t i = 0; i < interior.size(); ++i)
                e.sup_interior_error =
                    std::max(e.sup_interior_error, std::abs(s[i] - path.values[interior[i]]));
            e.endpoint_error = std::abs(s_zero - half_mass);
            e.energy = energy;
            report.push_back(e);
            ++next;
        }
    }
    return report;
}

} // namespace smpath
