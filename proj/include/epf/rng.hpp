#pragma once

#include <cmath>
#include <cstdint>

namespace epf {

/// splitmix64, used to expand one seed into independent stream seeds.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ with explicitly specified update and output functions, so a
/// fixed seed produces the same stream on every platform. Distribution
/// transforms below are likewise pinned (no implementation-defined
/// std::*_distribution anywhere in the pipeline).
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). Truncation of uniform()*n; the O(n/2^53)
    /// bias is irrelevant for sampling row/feature subsets.
    uint64_t below(uint64_t n) {
        uint64_t v = static_cast<uint64_t>(uniform() * static_cast<double>(n));
        return v < n ? v : n - 1;
    }

    /// Standard normal via Box-Muller (both values used, deterministic order).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Student-t with nu > 2 via normal / sqrt(chi2/nu); chi2 built from a
    /// gamma draw so non-integer nu works too.
    double student_t(double nu) {
        double z = normal();
        double c = 2.0 * gamma_draw(nu / 2.0);
        if (c <= 0.0) c = 1e-300;
        return z / std::sqrt(c / nu);
    }

    /// Poisson count via Knuth's product method (intended for small means).
    int poisson(double mean) {
        double limit = std::exp(-mean);
        double prod = uniform();
        int count = 0;
        while (prod > limit) {
            prod *= uniform();
            ++count;
        }
        return count;
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    /// Marsaglia-Tsang gamma(shape, 1) for shape >= 1, boosted for shape < 1.
    double gamma_draw(double shape) {
        if (shape < 1.0) {
            double u = uniform();
            while (u <= 0.0) u = uniform();
            return gamma_draw(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        double d = shape - 1.0 / 3.0;
        double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            double u = uniform();
            while (u <= 0.0) u = uniform();
            if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
        }
    }

    uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace epf
