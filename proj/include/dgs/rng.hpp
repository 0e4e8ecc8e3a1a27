#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dgs {

/// Mixes a seed with tags to derive independent sub-streams (splitmix64).
inline uint64_t derive_seed(uint64_t base, uint64_t tag) {
    uint64_t z = base + 0x9e3779b97f4a7c15ULL * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t derive_seed(uint64_t base, uint64_t tag_a, uint64_t tag_b) {
    return derive_seed(derive_seed(base, tag_a), tag_b);
}

/// Seeded generator with explicitly implemented distributions, so the
/// produced streams are a pure function of the seed rather than of the
/// standard library's distribution internals.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Uniform integer in [a, b] inclusive.
    int uniform_int(int a, int b) {
        const uint64_t span = static_cast<uint64_t>(b - a) + 1;
        return a + static_cast<int>(gen_() % span);
    }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace dgs
