/**
 * @file rng.hpp
 * @brief Deterministic random streams and Haar sampling on SU(2).
 *
 * Stream derivation: child k of a stream with seed s is seeded by
 * splitmix64(s ^ (k+1)*0x9E3779B97F4A7C15) so that worker/chunk streams are
 * reproducible and independent of thread scheduling. mt19937_64 is fully
 * specified by the standard; the uniform and normal transforms below are
 * spelled out so every platform generates the same values.
 */
#pragma once

#include <cstdint>
#include <random>

#include "fricke/su2.hpp"

namespace fricke {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

    /// Deterministic child stream; used one-per-chunk in parallel sampling.
    RandomStream derive(std::uint64_t stream_id) const {
        return RandomStream(splitmix64(seed_ ^ (stream_id + 1) * 0x9E3779B97F4A7C15ull));
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// uniform in [0,1) with 53-bit resolution
    double uniform01() { return (engine_() >> 11) * 0x1.0p-53; }

    /// uniform in (-1,1)
    double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

    std::uint64_t uniform_below(std::uint64_t n) {
        // modulo rejection, unbiased
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do { v = engine_(); } while (v >= limit);
        return v % n;
    }

    /// standard normal via Marsaglia polar method (cached spare)
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = uniform_pm1();
            v = uniform_pm1();
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    /// Haar-uniform element of SU(2): four independent normals, normalized.
    Su2 haar_su2() {
        while (true) {
            const double a = normal(), b = normal(), c = normal(), d = normal();
            const double n2 = a * a + b * b + c * c + d * d;
            if (n2 > 1e-12) {
                const double inv = 1.0 / std::sqrt(n2);
                return {a * inv, b * inv, c * inv, d * inv};
            }
        }
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace fricke
