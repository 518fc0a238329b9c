#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace dunkl {

/// Philox4x32-10 counter-based generator.  Each (seed, stream) pair is an
/// independent substream, so path-parallel simulation cannot depend on
/// scheduling: path i always draws from stream i.
class Philox {
  public:
    Philox(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

    std::uint32_t next_u32() {
        if (idx_ == 4) {
            fill_block();
            idx_ = 0;
        }
        return buf_[idx_++];
    }

    /// Uniform in (0, 1): 53 random bits, never exactly 0 or 1.
    double next_double() {
        const std::uint64_t hi = next_u32(), lo = next_u32();
        const std::uint64_t mant = ((hi >> 6) << 27) | (lo >> 5);
        return (static_cast<double>(mant) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller with a cached spare.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_double(), u2 = next_double();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * std::numbers::pi * u2;
        spare_ = rad * std::sin(ang);
        have_spare_ = true;
        return rad * std::cos(ang);
    }

    /// Kernel block for known-answer tests.
    static void block(std::uint32_t ctr[4], std::uint32_t key[2]) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += 0x9E3779B9u;
                key[1] += 0xBB67AE85u;
            }
            const std::uint64_t p0 = 0xD2511F53ull * ctr[0];
            const std::uint64_t p1 = 0xCD9E8D57ull * ctr[2];
            const std::uint32_t out0 =
                static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0];
            const std::uint32_t out1 = static_cast<std::uint32_t>(p1);
            const std::uint32_t out2 =
                static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1];
            const std::uint32_t out3 = static_cast<std::uint32_t>(p0);
            ctr[0] = out0;
            ctr[1] = out1;
            ctr[2] = out2;
            ctr[3] = out3;
        }
    }

  private:
    void fill_block() {
        std::uint32_t ctr[4] = {static_cast<std::uint32_t>(block_),
                                static_cast<std::uint32_t>(block_ >> 32),
                                static_cast<std::uint32_t>(stream_),
                                static_cast<std::uint32_t>(stream_ >> 32)};
        std::uint32_t key[2] = {static_cast<std::uint32_t>(seed_),
                                static_cast<std::uint32_t>(seed_ >> 32)};
        block(ctr, key);
        for (int i = 0; i < 4; ++i) buf_[i] = ctr[i];
        ++block_;
    }

    std::uint64_t seed_, stream_;
    std::uint64_t block_ = 0;
    std::uint32_t buf_[4] = {0, 0, 0, 0};
    int idx_ = 4;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Gamma(shape, 1) by Marsaglia-Tsang, with the power boost for shape < 1.
inline double sample_gamma(Philox& g, double shape) {
    if (shape < 1.0) {
        const double u = g.next_double();
        return sample_gamma(g, shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = g.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = g.next_double();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

/// Poisson(mean): multiplication method for small means, Hormann's PTRS
/// transformed rejection for larger ones.
inline long sample_poisson(Philox& g, double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 10.0) {
        const double limit = std::exp(-mean);
        long k = 0;
        double prod = g.next_double();
        while (prod > limit) {
            ++k;
            prod *= g.next_double();
        }
        return k;
    }
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);
    for (;;) {
        const double u = g.next_double() - 0.5;
        const double v = g.next_double();
        const double us = 0.5 - std::abs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<long>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
        const double rhs = kf * log_mean - mean - std::lgamma(kf + 1.0);
        if (lhs <= rhs) return static_cast<long>(kf);
    }
}

/// One exact transition of a squared Bessel process of dimension dim >= 0
/// over a step h: Z' ~ h * chi'^2_dim(Z/h) (noncentral chi-square), realized
/// as a Poisson-mixed gamma.
inline double squared_bessel_step(Philox& g, double dim, double z, double h) {
    const long n = sample_poisson(g, 0.5 * z / h);
    const double shape = 0.5 * dim + static_cast<double>(n);
    if (shape == 0.0) return 0.0;
    return 2.0 * h * sample_gamma(g, shape);
}

}  // namespace dunkl
