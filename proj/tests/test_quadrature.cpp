#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dunkl/quadrature.hpp"
#include "dunkl/specfun.hpp"

using namespace dunkl;

TEST_CASE("Gauss-Legendre integrates polynomials exactly and sums weights to 2") {
    for (int n : {4, 16, 64, 128, 200}) {
        const QuadRule& rule = gauss_legendre(n);
        double wsum = 0.0;
        for (double w : rule.w) wsum += w;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        // moment of degree 2n-2 (highest even moment below exactness limit)
        const int k = 2 * n - 2;
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i)
            acc += rule.w[i] * std::pow(rule.x[i], k);
        CHECK(acc == doctest::Approx(2.0 / (k + 1.0)).epsilon(1e-12));
    }
}

TEST_CASE("Gauss-Jacobi rules reproduce exact moments") {
    const double a = 0.25, b = -0.5;
    const QuadRule rule = gauss_jacobi(64, a, b);
    // total mass against the exact beta value
    double wsum = 0.0;
    for (double w : rule.w) wsum += w;
    const double mu0 = std::exp((a + b + 1.0) * std::numbers::ln2 + ln_gamma(a + 1.0) +
                                ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0));
    CHECK(wsum == doctest::Approx(mu0).epsilon(1e-13));
    // first moment: Int (1-x)^a (1+x)^b x dx = mu0 * (b - a) / (a + b + 2)
    double m1 = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) m1 += rule.w[i] * rule.x[i];
    CHECK(m1 == doctest::Approx(mu0 * (b - a) / (a + b + 2.0)).epsilon(1e-12));
    // orthogonality of degree-1 and degree-2 Jacobi polynomials under the rule
    double cross = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i)
        cross += rule.w[i] * jacobi_p(1, {a, b}, rule.x[i], true) *
                 jacobi_p(2, {a, b}, rule.x[i], true);
    CHECK(std::abs(cross) < 1e-13);
}

TEST_CASE("adaptive integration reaches requested accuracy") {
    const double got = integrate_adaptive([](double x) { return std::exp(-x * x); }, 0.0, 6.0,
                                          1e-13);
    CHECK(got == doctest::Approx(0.5 * std::sqrt(std::numbers::pi)).epsilon(1e-12));
    // sharply peaked integrand forces the panel recursion
    const double peaked = integrate_adaptive(
        [](double x) { return 1.0 / (1e-4 + (x - 0.3) * (x - 0.3)); }, 0.0, 1.0, 1e-10);
    const double exact = (std::atan(0.7 / 1e-2) + std::atan(0.3 / 1e-2)) / 1e-2;
    CHECK(peaked == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("2-D tensor integration of a separable function") {
    const double got = integrate2d(
        [](double x, double y) { return std::exp(-x) * std::cos(y); }, 0.0, 2.0, 0.0, 1.0, 1e-10);
    const double exact = (1.0 - std::exp(-2.0)) * std::sin(1.0);
    CHECK(got == doctest::Approx(exact).epsilon(1e-9));
}
