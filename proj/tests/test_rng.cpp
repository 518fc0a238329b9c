#include <cmath>
#include <vector>

#include "doctest.h"
#include "dunkl/rng.hpp"
#include "dunkl/specfun.hpp"
#include "dunkl/stats.hpp"

using namespace dunkl;

TEST_CASE("Philox4x32-10 known-answer vectors") {
    {
        std::uint32_t ctr[4] = {0, 0, 0, 0};
        std::uint32_t key[2] = {0, 0};
        Philox::block(ctr, key);
        CHECK(ctr[0] == 0x6627e8d5u);
        CHECK(ctr[1] == 0xe169c58du);
        CHECK(ctr[2] == 0xbc57ac4cu);
        CHECK(ctr[3] == 0x9b00dbd8u);
    }
    {
        std::uint32_t ctr[4] = {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu};
        std::uint32_t key[2] = {0xffffffffu, 0xffffffffu};
        Philox::block(ctr, key);
        CHECK(ctr[0] == 0x408f276du);
        CHECK(ctr[1] == 0x41c83b0eu);
        CHECK(ctr[2] == 0xa20bc7c6u);
        CHECK(ctr[3] == 0x6d5451fdu);
    }
}

TEST_CASE("substreams are deterministic and distinct") {
    Philox a(1234, 7), b(1234, 7), c(1234, 8);
    bool all_equal_c = true;
    for (int i = 0; i < 100; ++i) {
        const auto va = a.next_u32();
        CHECK(va == b.next_u32());
        if (va != c.next_u32()) all_equal_c = false;
    }
    CHECK_FALSE(all_equal_c);
}

TEST_CASE("uniform doubles stay in (0,1) with the right moments") {
    Philox g(42, 0);
    const int n = 200000;
    double s = 0.0, s2 = 0.0, lo = 1.0, hi = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = g.next_double();
        s += u;
        s2 += u * u;
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
    CHECK(s / n == doctest::Approx(0.5).epsilon(5e-3));
    CHECK(s2 / n - 0.25 == doctest::Approx(1.0 / 12.0).epsilon(2e-2));
}

TEST_CASE("normal sampler moments") {
    Philox g(7, 3);
    const int n = 400000;
    double s = 0.0, s2 = 0.0, s4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = g.normal();
        s += z;
        s2 += z * z;
        s4 += z * z * z * z;
    }
    CHECK(std::abs(s / n) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(s4 / n == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("gamma sampler matches its CDF") {
    for (double shape : {0.5, 1.0, 2.7, 11.0}) {
        Philox g(2024, static_cast<std::uint64_t>(shape * 100));
        std::vector<double> xs(20000);
        for (double& x : xs) x = sample_gamma(g, shape);
        const auto ks = ks_test(xs, [&](double x) { return gammainc_p(shape, x); });
        CHECK(ks.p_value > 0.005);
    }
}

TEST_CASE("poisson sampler matches its CDF in both regimes") {
    for (double mean : {0.3, 4.0, 30.0, 400.0}) {
        Philox g(99, static_cast<std::uint64_t>(mean * 10));
        const int n = 20000;
        double s = 0.0, s2 = 0.0;
        std::vector<double> counts;
        for (int i = 0; i < n; ++i) {
            const double k = static_cast<double>(sample_poisson(g, mean));
            s += k;
            s2 += k * k;
            counts.push_back(k);
        }
        const double m = s / n, v = s2 / n - m * m;
        CHECK(m == doctest::Approx(mean).epsilon(0.02));
        CHECK(v == doctest::Approx(mean).epsilon(0.06));
        // discrete KS with a continuity blur is awkward; use a chi-square on
        // the integer cells around the bulk instead
        const int lo = std::max(0, static_cast<int>(mean - 6.0 * std::sqrt(mean) - 3));
        const int hi = static_cast<int>(mean + 6.0 * std::sqrt(mean) + 3);
        std::vector<double> obs(hi - lo + 1, 0.0), expd(hi - lo + 1, 0.0);
        for (double k : counts) {
            const int idx = std::clamp(static_cast<int>(k) - lo, 0, hi - lo);
            obs[idx] += 1.0;
        }
        for (int k = lo; k <= hi; ++k) {
            const double logp = -mean + k * std::log(mean) - ln_gamma(k + 1.0);
            expd[k - lo] = std::exp(logp);
        }
        // absorb both tails into the end cells: P(X <= lo) and P(X >= hi)
        expd.front() = gammainc_q(lo + 1.0, mean);
        expd.back() = gammainc_p(static_cast<double>(hi), mean);
        const auto chi = chi2_test(obs, expd, 8.0);
        CHECK(chi.p_value > 0.005);
    }
}
