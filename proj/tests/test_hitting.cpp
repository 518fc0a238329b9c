#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "dunkl/hitting.hpp"
#include "dunkl/rng.hpp"
#include "dunkl/simulate.hpp"
#include "dunkl/spectral.hpp"

using namespace dunkl;

TEST_CASE("girsanov parameters: identity, generic, and the printed specializations") {
    const GirsanovParams id = girsanov_params(2.0, 3.0, 2.0, 3.0);
    CHECK(id.kappa == 0.0);
    CHECK(id.beta == 0.0);
    CHECK(id.u == 0.0);
    CHECK(id.v == 0.0);
    CHECK(id.c == 0.0);

    const GirsanovParams g = girsanov_params(2.0, 3.0, 4.0, 3.0);
    CHECK(g.kappa == doctest::Approx(-0.5));
    CHECK(g.beta == 0.0);
    CHECK(g.u == doctest::Approx(-0.5));
    CHECK(g.v == 0.0);
    CHECK(g.c == doctest::Approx(2.0));

    // Corollary regime: (d1,d1') the tilted pair of (d2,d2') = (2k1+1, 2k0+1)
    const double k0 = 0.75, k1 = 0.6, l0 = k0 - 0.5, l1 = k1 - 0.5;
    const GirsanovParams cg =
        girsanov_params(3.0 - 2.0 * k1, 3.0 - 2.0 * k0, 2.0 * k1 + 1.0, 2.0 * k0 + 1.0);
    CHECK(cg.kappa == doctest::Approx(-l1));
    CHECK(cg.beta == doctest::Approx(-l0));
    CHECK(cg.u == doctest::Approx(0.0));
    CHECK(cg.v == doctest::Approx(0.0));
    CHECK(cg.c == doctest::Approx(2.0 * (l0 + l1)));

    // second-case specialization d2 = 4 - d1, d2' = d1' at (d, d') = (1.5, 3).
    // The exponential rate follows from the general parameter formulas:
    // c = d'(2-d)/2 = 0.75 (an h-transform computation confirms the same
    // value; the shortcut c = d'(2-d) printed alongside the theorem is off
    // by a factor of two against the theorem's own general display).
    const GirsanovParams sc = girsanov_params(1.5, 3.0, 2.5, 3.0);
    CHECK(sc.beta == 0.0);
    CHECK(sc.u == doctest::Approx(0.0));
    CHECK(sc.v == 0.0);
    CHECK(sc.kappa == doctest::Approx(-0.25));
    CHECK(sc.c == doctest::Approx(0.75));

    CHECK_THROWS_AS(girsanov_params(0.0, 1.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("case-1 tail: t -> 0 limit, monotonicity, range") {
    const DihedralSystem s = make_system(4, 0.75, 0.75);
    const PolarPoint x{1.0, std::numbers::pi / 16.0};
    SeriesControl ctl;
    ctl.max_terms = 500;
    CHECK(tail_series_case1(s, x, 1e-4, ctl) == doctest::Approx(1.0).epsilon(1e-4));

    double prev = 1.1;
    for (double t : {0.1, 0.3, 0.7, 1.2, 2.0, 3.5, 5.0}) {
        const double v = tail_series_case1(s, x, t);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
    CHECK(prev < 0.3);  // the -l process hits, so the tail really decays

    CHECK_THROWS_AS(tail_series_case1(make_system(4, 0.3, 0.75), x, 0.5), regime_error);
    CHECK_THROWS_AS(tail_series_case1(make_system(4, 0.5, 0.5), x, 0.5), regime_error);
    CHECK_THROWS_AS(tail_series_case1(s, {1.0, 0.0}, 0.5), std::domain_error);
}

TEST_CASE("case-1 tail equals the quadrature-mixture dual route") {
    const DihedralSystem s = make_system(4, 0.75, 0.75);
    const PolarPoint x{1.0, std::numbers::pi / 16.0};
    for (double t : {0.2, 0.5, 1.0, 2.0}) {
        const double a = tail_series_case1(s, x, t);
        const double b = tail_series_case1_dual(s, x, t);
        CHECK(std::abs(a - b) < 1e-6);
    }
    const DihedralSystem s6 = make_system(6, 0.9, 0.6);
    const PolarPoint x6{0.8, 0.4 * s6.chamber_angle};
    for (double t : {0.3, 0.8}) {
        CHECK(std::abs(tail_series_case1(s6, x6, t) - tail_series_case1_dual(s6, x6, t)) < 1e-6);
    }
}

TEST_CASE("k = 1 tail: algebraic identity with the case-1 series") {
    const DihedralSystem s = make_system(4, 1.0, 1.0);
    for (double t : {0.08, 0.3, 0.8, 2.0}) {
        for (double frac : {0.15, 0.4, 0.5, 0.77}) {
            const PolarPoint x{1.1, frac * s.chamber_angle};
            const double a = tail_series_case1(s, x, t);
            const double b = tail_series_k1(s, x, t);
            CHECK(a == doctest::Approx(b).epsilon(1e-9));
        }
    }
    const DihedralSystem s6 = make_system(6, 1.0, 1.0);
    for (double t : {0.2, 1.0}) {
        const PolarPoint x{0.9, 0.35 * s6.chamber_angle};
        CHECK(tail_series_case1(s6, x, t) ==
              doctest::Approx(tail_series_k1(s6, x, t)).epsilon(1e-9));
    }
    // wall limit
    CHECK(tail_series_k1(s, {1.0, 1e-5}, 0.5) < 1e-3);
    CHECK_THROWS_AS(tail_series_k1(make_system(4, 0.75, 0.75), {1.0, 0.3}, 0.5), regime_error);
}

TEST_CASE("k = 1 tail against the planar wedge exit oracle") {
    const DihedralSystem s = make_system(4, 1.0, 1.0);
    const PolarPoint x{1.0, std::numbers::pi / 8.0};
    const auto hits = wedge_exit_mc(s.chamber_angle, x, 2.0, 2.5e-4, 20000, 515);
    std::vector<double> grid;
    for (int i = 1; i <= 10; ++i) grid.push_back(0.2 * i);
    const auto surv = survival_curve(hits, grid);
    double gap = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        gap = std::max(gap, std::abs(surv[i] - tail_series_k1(s, x, grid[i])));
    CHECK(gap < 0.03);
}

TEST_CASE("case-2 tail: regime checks, t -> 0 limit, index identity, mirror") {
    const DihedralSystem s = make_system(4, 0.75, 0.25);
    const PolarPoint x{1.0, std::numbers::pi / 16.0};
    SeriesControl ctl;
    ctl.max_terms = 500;
    CHECK(tail_series_case2(s, x, 1e-4, ctl) == doctest::Approx(1.0).epsilon(1e-3));

    // Bessel-index radicand closes to a perfect square for all j <= 50
    const double gt = s.p * (s.k0 + 1.0 - s.k1);
    const GirsanovParams g = girsanov_params(2.0 * s.k1 + 1.0, 2.0 * s.k0 + 1.0,
                                             3.0 - 2.0 * s.k1, 2.0 * s.k0 + 1.0);
    for (int j = 0; j <= 50; ++j) {
        const double lam = -2.0 * j * (j + s.k0 + 1.0 - s.k1);
        const double radicand =
            s.gamma * s.gamma + 2.0 * (g.c - lam) * s.p * s.p;
        CHECK(radicand >= 0.0);
        const double want = (2.0 * j * s.p + gt) * (2.0 * j * s.p + gt);
        CHECK(radicand == doctest::Approx(want).epsilon(1e-12));
    }

    double prev = 1.1;
    for (double t : {0.1, 0.4, 1.0, 2.0, 3.0}) {
        const double v = tail_series_case2(s, x, t);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        CHECK(v <= prev + 1e-12);
        prev = v;
    }

    // mirrored regime k0 < 1/2 <= k1 via the wall reflection
    const DihedralSystem sm = make_system(4, 0.25, 0.75);
    const PolarPoint xm{1.0, s.chamber_angle - x.theta};
    for (double t : {0.2, 0.8}) {
        CHECK(tail_series_case2(sm, xm, t) ==
              doctest::Approx(tail_series_case2(s, x, t)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(tail_series_case2(make_system(4, 0.75, 0.75), x, 0.5), regime_error);
    CHECK_THROWS_AS(tail_series_case2(make_system(4, 0.25, 0.25), x, 0.5), regime_error);
}

TEST_CASE("case-2 tail against the skew-product hitting sampler") {
    const DihedralSystem s = make_system(4, 0.75, 0.25);
    SimConfig cfg;
    cfg.t_max = 3.0;
    cfg.dt = 5e-4;
    cfg.n_paths = 30000;
    cfg.seed = 516;
    cfg.start = {1.0, std::numbers::pi / 8.0};
    const HittingResult res = sample_hitting_time(s, cfg);
    CHECK(res.hitting_possible);
    std::vector<double> grid;
    for (int i = 1; i <= 10; ++i) grid.push_back(0.1 + 0.29 * (i - 1));
    const auto surv = survival_curve(res.samples, grid);
    double gap = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        gap = std::max(gap, std::abs(surv[i] - tail_series_case2(s, cfg.start, grid[i])));
    CHECK(gap < 0.035);
}

TEST_CASE("case-1 tail against the skew-product hitting sampler of the -l process") {
    const DihedralSystem series_sys = make_system(4, 0.75, 0.75);
    const DihedralSystem sim_sys = make_system(4, 0.25, 0.25);  // multiplicities 1 - k
    SimConfig cfg;
    cfg.t_max = 3.0;
    cfg.dt = 5e-4;
    cfg.n_paths = 30000;
    cfg.seed = 517;
    cfg.start = {1.0, std::numbers::pi / 8.0};
    const HittingResult res = sample_hitting_time(sim_sys, cfg);
    CHECK(res.hitting_possible);
    std::vector<double> grid;
    for (int i = 1; i <= 10; ++i) grid.push_back(0.1 + 0.29 * (i - 1));
    const auto surv = survival_curve(res.samples, grid);
    double gap = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        gap = std::max(gap, std::abs(surv[i] - tail_series_case1(series_sys, cfg.start, grid[i])));
    CHECK(gap < 0.035);
}

TEST_CASE("jacobi exit tail: limits, symmetry, Monte Carlo reweighting oracle") {
    SeriesControl ctl;
    ctl.max_terms = 500;
    CHECK(jacobi_exit_tail(0.75, 0.75, 0.4, 1e-4, ctl) == doctest::Approx(1.0).epsilon(1e-4));

    for (double t : {0.1, 0.5, 1.5}) {
        const double a = jacobi_exit_tail(0.75, 0.6, 0.37, t);
        const double b = jacobi_exit_tail(0.6, 0.75, 1.0 - 0.37, t);
        CHECK(a == doctest::Approx(b).epsilon(1e-10));
        CHECK(a >= 0.0);
        CHECK(a <= 1.0);
    }

    // MC oracle: average the reweighting functional under the (l1,l0) law
    const double k0 = 0.75, k1 = 0.75, z = 0.4, t = 0.5;
    const double l0 = k0 - 0.5, l1 = k1 - 0.5;
    const double c = 2.0 * (l0 + l1);
    const int n = 30000;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        Philox rng(518, i);
        const double j = jacobi_skew_at(k0, k1, z, t, 1e-3, rng);
        acc += std::exp(-c * t) * std::pow(z / j, l1) * std::pow((1.0 - z) / (1.0 - j), l0);
    }
    acc /= n;
    CHECK(jacobi_exit_tail(k0, k1, z, t) == doctest::Approx(acc).epsilon(0.012));

    CHECK_THROWS_AS(jacobi_exit_tail(1.6, 0.75, 0.4, 0.5), std::domain_error);
    CHECK_THROWS_AS(jacobi_exit_tail(0.75, 0.75, 0.0, 0.5), std::domain_error);
}

TEST_CASE("tail curve assembly") {
    const DihedralSystem s = make_system(4, 0.75, 0.75);
    const PolarPoint x{1.0, std::numbers::pi / 16.0};
    const std::vector<double> grid = {0.2, 0.5, 1.0};
    const TailCurve curve = tail_curve_series(s, x, grid, "case1");
    CHECK(curve.values.size() == 3);
    CHECK(curve.method == "series");
    for (std::size_t i = 1; i < curve.values.size(); ++i)
        CHECK(curve.values[i] <= curve.values[i - 1]);
    CHECK_THROWS_AS(tail_curve_series(s, x, grid, "bogus"), std::invalid_argument);
}
