#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "smpath/common.hpp"
#include "smpath/rng.hpp"

namespace smpath {

/// Stochastic-measure models with continuous paths that the toolkit can
/// realize. All are set functions A |-> mu(A) on Borel subsets of (0,T]
/// (or (0,T]^2 for the sheet), sampled through mu(t) = mu((0,t]).
enum class sm_kind {
    deterministic_lebesgue, // mu = Lebesgue measure, a deterministic sanity model
    rademacher_series,      // mu(A) = sum_k eps_k k^{-4/3} int_A x^{k^{-1/3}-1} dx on the unit scale
    wiener,                 // mu(A) = int 1_A dW
    fbm,                    // mu(A) = int 1_A dB^H, H in (1/2, 1)
    brownian_sheet_2d,      // independently scattered Gaussian measure on (0,T]^2
};

inline std::string kind_name(sm_kind k) {
    switch (k) {
        case sm_kind::deterministic_lebesgue: return "lebesgue";
        case sm_kind::rademacher_series: return "rademacher";
        case sm_kind::wiener: return "wiener";
        case sm_kind::fbm: return "fbm";
        case sm_kind::brownian_sheet_2d: return "sheet2d";
    }
    return "unknown";
}

/// Declarative description of an SM model: kind plus the parameters that the
/// kind admits. Construct through the factories (or validate()) so that bad
/// combinations are rejected up front.
struct sm_model {
    sm_kind kind = sm_kind::deterministic_lebesgue;
    double horizon = 1.0; // T; the domain is (0,T] (or (0,T]^2)
    int truncation = 0;   // K, rademacher_series only
    double hurst = 0.0;   // H, fbm only

    static constexpr int default_truncation = 4096;

    static sm_model lebesgue(double T) { return validated({sm_kind::deterministic_lebesgue, T, 0, 0.0}); }
    static sm_model rademacher(double T, int K = default_truncation) {
        return validated({sm_kind::rademacher_series, T, K, 0.0});
    }
    static sm_model wiener(double T) { return validated({sm_kind::wiener, T, 0, 0.0}); }
    static sm_model fractional(double T, double H) { return validated({sm_kind::fbm, T, 0, H}); }
    static sm_model sheet2d(double T) { return validated({sm_kind::brownian_sheet_2d, T, 0, 0.0}); }

    void validate() const {
        if (!(horizon > 0.0) || !std::isfinite(horizon))
            throw invalid_model_error("model horizon T must be positive and finite");
        if (kind == sm_kind::rademacher_series) {
            if (truncation < 1) throw invalid_model_error("rademacher truncation K must be >= 1");
        } else if (truncation != 0) {
            throw invalid_model_error("truncation K applies to the rademacher model only");
        }
        if (kind == sm_kind::fbm) {
            if (!(hurst > 0.5 && hurst < 1.0))
                throw invalid_model_error("fbm Hurst index must lie in (1/2, 1)");
        } else if (hurst != 0.0) {
            throw invalid_model_error("Hurst index applies to the fbm model only");
        }
    }

private:
    static sm_model validated(sm_model m) {
        m.validate();
        return m;
    }
};

/// One frozen realization of the Rademacher-series SM: the sign sequence
/// eps_1..eps_K together with the precomputed weights a_k = k^{-4/3} and
/// density exponents c_k = k^{-1/3}. With the signs frozen, interval measures
/// and integrals have closed forms, so this model supports exact oracles.
struct rademacher_realization {
    double horizon = 1.0;
    std::vector<double> signs;     // eps_k in {-1, +1}
    std::vector<double> weights;   // a_k = k^{-4/3}
    std::vector<double> exponents; // c_k = k^{-1/3}

    int truncation() const { return static_cast<int>(signs.size()); }

    /// mu((a,b]) = sum_k eps_k a_k (x_b^{c_k} - x_a^{c_k}) / c_k with the
    /// interval mapped to the unit scale x = s/T.
    double interval_measure(double a, double b) const {
        if (!(0.0 <= a && a <= b && b <= horizon))
            throw std::domain_error("interval must satisfy 0 <= a <= b <= T");
        const double xa = a / horizon;
        const double xb = b / horizon;
        double sum = 0.0;
        for (std::size_t k = 0; k < signs.size(); ++k) {
            const double c = exponents[k];
            sum += signs[k] * weights[k] * (std::pow(xb, c) - std::pow(xa, c)) / c;
        }
        return sum;
    }

    /// mu((0, t]) = sum_k eps_k k^{-1} (t/T)^{c_k}; a_k / c_k = 1/k.
    double point_value(double t) const {
        if (!(0.0 <= t && t <= horizon)) throw std::domain_error("t must lie in [0, T]");
        if (t == 0.0) return 0.0;
        const double lx = std::log(t / horizon);
        double sum = 0.0;
        for (std::size_t k = 0; k < signs.size(); ++k)
            sum += signs[k] * std::exp(exponents[k] * lx) / static_cast<double>(k + 1);
        return sum;
    }

    double total_mass() const { return interval_measure(0.0, horizon); }
};

/// Draws the K independent signs for a Rademacher-series model. Deterministic
/// in (master seed, stream index).
inline rademacher_realization realize_rademacher(const sm_model& model, rng_stream stream) {
    if (model.kind != sm_kind::rademacher_series)
        throw invalid_model_error("realize_rademacher requires a rademacher model");
    model.validate();
    rademacher_realization r;
    r.horizon = model.horizon;
    const int K = model.truncation;
    r.signs.resize(K);
    r.weights.resize(K);
    r.exponents.resize(K);
    rng_engine eng(stream);
    for (int k = 1; k <= K; ++k) {
        r.signs[k - 1] = static_cast<double>(eng.sign());
        r.weights[k - 1] = std::pow(static_cast<double>(k), -4.0 / 3.0);
        r.exponents[k - 1] = std::pow(static_cast<double>(k), -1.0 / 3.0);
    }
    return r;
}

} // namespace smpath
