#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace smpath {

/// splitmix64 finalizer. This is the published mixing function used to derive
/// substream seeds: identical (master seed, stream index) pairs map to the
/// same generator state on every platform.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Address of one reproducible randomness stream: a master seed plus a
/// substream index. Replicates of a Monte Carlo run use consecutive indices.
struct rng_stream {
    std::uint64_t master_seed = 0;
    std::uint64_t index = 0;

    rng_stream substream(std::uint64_t i) const { return {master_seed, i}; }

    /// Derived 64-bit seed for the underlying engine.
    std::uint64_t engine_seed() const noexcept {
        return mix64(master_seed ^ mix64(index * 0x9E3779B97F4A7C15ull + 1));
    }
};

/// Deterministic double/Gaussian source on top of mt19937_64.
///
/// mt19937_64 output is fully specified by the standard, uniforms use a fixed
/// 53-bit conversion, and Gaussians use the Marsaglia polar transform, so the
/// sequence for a given stream is reproducible.
class rng_engine {
public:
    explicit rng_engine(rng_stream stream) : gen_(stream.engine_seed()) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform on [0, 1) with 53 random mantissa bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Standard normal via the polar method (no trig, caches the spare).
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    /// Fair sign in {-1, +1}.
    int sign() { return (gen_() >> 63) ? 1 : -1; }

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace smpath
