#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <random>

namespace driftbench {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seedable random source with a fixed draw recipe, so that identical seeds
/// give identical streams independent of the platform's distribution
/// implementations: mt19937_64 words, uniforms via the top 53 bits,
/// standard normals via Box-Muller on uniform pairs, Poisson via Knuth's
/// product-of-uniforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Fills `out` with independent standard normals, consuming
    /// ceil(size/2) Box-Muller pairs; the odd remainder is discarded.
    void fill_standard_normal(Eigen::Ref<Eigen::VectorXd> out) {
        const Eigen::Index n = out.size();
        for (Eigen::Index i = 0; i < n; i += 2) {
            const double u1 = uniform();
            const double u2 = uniform();
            const double r = std::sqrt(-2.0 * std::log1p(-u1));
            const double theta = 2.0 * M_PI * u2;
            out[i] = r * std::cos(theta);
            if (i + 1 < n) out[i + 1] = r * std::sin(theta);
        }
    }

    int poisson(double lambda) {
        const double limit = std::exp(-lambda);
        double p = 1.0;
        int k = 0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace driftbench
