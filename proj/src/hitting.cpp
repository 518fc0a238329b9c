#include "dunkl/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "dunkl/quadrature.hpp"
#include "dunkl/specfun.hpp"
#include "dunkl/spectral.hpp"

namespace dunkl {

GirsanovParams girsanov_params(double d1, double d1p, double d2, double d2p) {
    if (d1 <= 0.0 || d1p <= 0.0 || d2 <= 0.0 || d2p <= 0.0)
        throw std::domain_error("girsanov_params: dimensions must be > 0");
    GirsanovParams g;
    g.kappa = 0.25 * (d1 - d2);
    g.beta = 0.25 * (d1p - d2p);
    g.u = g.kappa * (0.5 * (d1 + d2) - 2.0);
    g.v = g.beta * (0.5 * (d1p + d2p) - 2.0);
    g.c = 0.25 * (d1 + d1p - d2 - d2p) * (2.0 - 0.5 * (d1 + d1p + d2 + d2p));
    return g;
}

namespace {

using SysKey = std::tuple<int, double, double>;

/// Per-system caches of the quadrature coefficients S2(j) and F(j).
std::vector<double>& s2_cache(const DihedralSystem& sys, int upto) {
    static std::map<SysKey, std::vector<double>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto& vec = cache[{sys.n, sys.k0, sys.k1}];
    while (static_cast<int>(vec.size()) <= upto)
        vec.push_back(s2_integral(static_cast<int>(vec.size()), sys));
    return vec;
}

std::vector<double>& f_cache(const DihedralSystem& sys, int upto) {
    static std::map<SysKey, std::vector<double>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto& vec = cache[{sys.n, sys.k0, sys.k1}];
    while (static_cast<int>(vec.size()) <= upto)
        vec.push_back(f_integral(static_cast<int>(vec.size()), sys));
    return vec;
}

void require_case1(const DihedralSystem& sys) {
    const bool in_range = sys.k0 >= 0.5 && sys.k0 <= 1.0 && sys.k1 >= 0.5 && sys.k1 <= 1.0;
    const bool strict = sys.k0 > 0.5 || sys.k1 > 0.5;
    if (!in_range || !strict)
        throw regime_error(
            "tail_series_case1: requires 1/2 <= k0,k1 <= 1 with at least one k above 1/2");
}

/// Radial mixture factor for a Bessel process of index g_proc and target
/// order b (the closed form of E_rho[e^{-kappa p^2 A_t}] with
/// b = sqrt(g_proc^2 + 2 kappa p^2)):
///   M = X^{b - g_proc} 2^{a-b} G(a+1)/G(b+1) e^{-X^2/2} 1F1(a+1, b+1, X^2/2),
/// a = (g_proc + b)/2, X = rho / sqrt(t).  Assembled in log space: the
/// Gamma-ratio exponent and the scaled 1F1 both leave the double range for
/// large orders even though their product is a probability weight.
double mixture_factor(double g_proc, double b, double rho, double t) {
    const double a = 0.5 * (g_proc + b);
    const double X2 = rho * rho / t;
    const double lg = 0.5 * (b - g_proc) * std::log(X2) + (a - b) * std::numbers::ln2 +
                      std::lgamma(a + 1.0) - std::lgamma(b + 1.0);
    const double ls = hyp1f1_scaled_log(a + 1.0, b + 1.0, 0.5 * X2);
    const double tot = lg + ls;
    return tot < -745.0 ? 0.0 : std::exp(tot);
}

void check_interior(const DihedralSystem& sys, const PolarPoint& x, const char* who) {
    if (!(x.r > 0.0) || x.theta <= 0.0 || x.theta >= sys.chamber_angle)
        throw std::domain_error(std::string(who) + ": start must be strictly inside the chamber");
}

}  // namespace

double tail_series_case1(const DihedralSystem& sys, const PolarPoint& x, double t,
                         const SeriesControl& ctl) {
    require_case1(sys);
    check_interior(sys, x, "tail_series_case1");
    if (t <= 0.0) throw std::domain_error("tail_series_case1: t > 0 required");
    const double p = sys.p, gamma = sys.gamma, gp = 2.0 * p - gamma;
    const double z = std::cos(p * x.theta) * std::cos(p * x.theta);
    const double cw = std::exp2(sys.l0 + sys.l1 + 1.0);
    const double pref =
        cw * p * std::pow(z, sys.l1) * std::pow(1.0 - z, sys.l0);
    const PolyParams par{sys.l0, sys.l1};
    const double xarg = 2.0 * z - 1.0;
    double sum = 0.0;
    int small_run = 0;
    for (int j = 0; j < ctl.max_terms; ++j) {
        const double b = 2.0 * j * p + gamma;
        const double s2 = s2_cache(sys, j)[j];
        const double q = jacobi_p(j, par, xarg, true);
        const double m = mixture_factor(gp, b, x.r, t);
        sum += s2 * q * m;
        // smallness judged on an angle-null-free envelope: the structural
        // zeros of S2 and the oscillation nulls of q must not fake convergence
        const double envelope = std::abs(s2 * m) * std::max(1.0, std::abs(q));
        small_run = (envelope <= ctl.tol * std::abs(sum)) ? small_run + 1 : 0;
        if (small_run >= ctl.consecutive_small && j >= 2) break;
        if (j + 1 == ctl.max_terms)
            throw nonconvergence_error("tail_series_case1: series did not converge");
    }
    return std::clamp(pref * sum, 0.0, 1.0);
}

double tail_series_case1_dual(const DihedralSystem& sys, const PolarPoint& x, double t,
                              const SeriesControl& ctl) {
    require_case1(sys);
    check_interior(sys, x, "tail_series_case1_dual");
    const double p = sys.p, gamma = sys.gamma, gp = 2.0 * p - gamma;
    const double z = std::cos(p * x.theta) * std::cos(p * x.theta);
    const double cw = std::exp2(sys.l0 + sys.l1 + 1.0);
    const double pref = cw * p * std::pow(z, sys.l1) * std::pow(1.0 - z, sys.l0);
    const PolyParams par{sys.l0, sys.l1};
    const double xarg = 2.0 * z - 1.0;
    // Radial mixture by quadrature over the Bessel semigroup of index 2p-gamma:
    // E[e^{(lambda_j - c) p^2 A_t}] = Int I_{b_j}/I_{gp}(rho r/t) q_t(rho,r) dr.
    const double rho = x.r;
    const double hi = std::sqrt(rho * rho + 2.0 * (gp + 1.0) * t) + 10.0 * std::sqrt(t);
    double sum = 0.0;
    int small_run = 0;
    for (int j = 0; j < ctl.max_terms; ++j) {
        const double b = 2.0 * j * p + gamma;
        auto integrand = [&](double r) {
            if (r <= 0.0) return 0.0;
            const double zz = rho * r / t;
            const double num = bessel_i_scaled(b, zz);
            const double den = bessel_i_scaled(gp, zz);
            if (den == 0.0) return 0.0;
            return (num / den) * bessel_semigroup(gp, t, rho, r);
        };
        const double mix = integrate_adaptive(integrand, 0.0, hi, 1e-12, 1e-11);
        const double s2 = s2_cache(sys, j)[j];
        const double q = jacobi_p(j, par, xarg, true);
        sum += s2 * q * mix;
        const double envelope = std::abs(s2 * mix) * std::max(1.0, std::abs(q));
        small_run = (envelope <= ctl.tol * std::abs(sum)) ? small_run + 1 : 0;
        if (small_run >= ctl.consecutive_small && j >= 2) break;
        if (j + 1 == ctl.max_terms)
            throw nonconvergence_error("tail_series_case1_dual: series did not converge");
    }
    return std::clamp(pref * sum, 0.0, 1.0);
}

double tail_series_k1(const DihedralSystem& sys, const PolarPoint& x, double t,
                      const SeriesControl& ctl) {
    if (sys.k0 != 1.0 || sys.k1 != 1.0)
        throw regime_error("tail_series_k1: requires k0 = k1 = 1");
    check_interior(sys, x, "tail_series_k1");
    if (t <= 0.0) throw std::domain_error("tail_series_k1: t > 0 required");
    const double p = sys.p;
    const double w = x.r * x.r / (4.0 * t);
    const double X = x.r / std::sqrt(t);
    // Orders d_m = (2m+1)p - 1/2 and d_m + 1, both strided by 2p.
    const int budget = std::max(
        4, std::min(ctl.max_terms,
                    static_cast<int>((w + 10.0 * std::sqrt(w + 1.0) + 30.0) / (2.0 * p)) + 3));
    const auto ia = bessel_i_scaled_seq(p - 0.5, w, budget, 2 * sys.p);
    const auto ib = bessel_i_scaled_seq(p + 0.5, w, budget, 2 * sys.p);
    const double pref = std::numbers::sqrt2 * p * X / std::sqrt(std::numbers::pi);
    double sum = 0.0;
    int small_run = 0;
    for (int m = 0; m < budget; ++m) {
        const double a = (2.0 * m + 1.0) * p;
        const double bessel_pair = (ia[m] + ib[m]) / a;
        sum += bessel_pair * std::sin(2.0 * a * x.theta);
        // envelope without the oscillating sine
        small_run = (std::abs(bessel_pair) <= ctl.tol * std::abs(sum)) ? small_run + 1 : 0;
        if (small_run >= ctl.consecutive_small && m >= 2) break;
        if (m + 1 == budget && budget == ctl.max_terms)
            throw nonconvergence_error("tail_series_k1: series did not converge");
    }
    return std::clamp(pref * sum, 0.0, 1.0);
}

double tail_series_case2(const DihedralSystem& sys, const PolarPoint& x, double t,
                         const SeriesControl& ctl) {
    const bool main_case = sys.k1 < 0.5 && sys.k0 >= 0.5;
    const bool mirror_case = sys.k0 < 0.5 && sys.k1 >= 0.5;
    if (!main_case && !mirror_case)
        throw regime_error("tail_series_case2: requires exactly one multiplicity below 1/2");
    if (mirror_case) {
        // Swap the walls: (k0, k1, phi) -> (k1, k0, pi/(2p) - phi).
        const DihedralSystem swapped = make_system(sys.n, sys.k1, sys.k0);
        return tail_series_case2(swapped, {x.r, sys.chamber_angle - x.theta}, t, ctl);
    }
    check_interior(sys, x, "tail_series_case2");
    if (t <= 0.0) throw std::domain_error("tail_series_case2: t > 0 required");
    const double p = sys.p, gamma = sys.gamma;
    const double gt = p * (sys.k0 + 1.0 - sys.k1);  // tilted system gamma
    const double z = std::cos(p * x.theta) * std::cos(p * x.theta);
    const double cw = std::exp2(sys.l0 - sys.l1 + 1.0);
    const double pref = cw * std::pow(z, -sys.l1);
    const PolyParams par{sys.l0, -sys.l1};
    const double xarg = 2.0 * z - 1.0;
    double sum = 0.0;
    int small_run = 0;
    for (int j = 0; j < ctl.max_terms; ++j) {
        const double b = 2.0 * j * p + gt;
        const double fj = f_cache(sys, j)[j];
        const double q = jacobi_p(j, par, xarg, true);
        const double m = mixture_factor(gamma, b, x.r, t);
        sum += fj * q * m;
        const double envelope = std::abs(fj * m) * std::max(1.0, std::abs(q));
        small_run = (envelope <= ctl.tol * std::abs(sum)) ? small_run + 1 : 0;
        if (small_run >= ctl.consecutive_small && j >= 2) break;
        if (j + 1 == ctl.max_terms)
            throw nonconvergence_error("tail_series_case2: series did not converge");
    }
    return std::clamp(pref * sum, 0.0, 1.0);
}

double jacobi_exit_tail(double k0, double k1, double z, double t, const SeriesControl& ctl) {
    const double l0 = k0 - 0.5, l1 = k1 - 0.5;
    if (!(l0 >= 0.0 && l0 < 1.0 && l1 >= 0.0 && l1 < 1.0))
        throw std::domain_error("jacobi_exit_tail: requires 0 <= l0, l1 < 1");
    if (!(z > 0.0 && z < 1.0)) throw std::domain_error("jacobi_exit_tail: z must be interior");
    if (t <= 0.0) throw std::domain_error("jacobi_exit_tail: t > 0 required");
    const GirsanovParams g =
        girsanov_params(2.0 - 2.0 * l1, 2.0 - 2.0 * l0, 2.0 * k1 + 1.0, 2.0 * k0 + 1.0);
    // E_z^{l1,l0}[e^{-ct} (z/J_t)^{l1} ((1-z)/(1-J_t))^{l0}]; the spectral
    // density's endpoint weight cancels the reweighting exactly, leaving a
    // polynomial integrand handled by a fixed Gauss rule on [0,1].
    const double cw = std::exp2(l0 + l1 + 1.0);
    const PolyParams par{l0, l1};
    const double xz = 2.0 * z - 1.0;
    const QuadRule& rule = gauss_legendre(128);
    double total = 0.0;
    for (int j = 0; j < ctl.max_terms; ++j) {
        const double lam = -2.0 * j * (j + k0 + k1);
        const double decay = std::exp(lam * t);
        // composite panels keep the rule exact past degree 255
        const int panels = 1 + j / 200;
        double integral = 0.0;
        for (int pan = 0; pan < panels; ++pan) {
            const double lo = -1.0 + 2.0 * pan / panels;
            const double hi = -1.0 + 2.0 * (pan + 1) / panels;
            const double c = 0.5 * (hi + lo), hw = 0.5 * (hi - lo);
            for (std::size_t i = 0; i < rule.x.size(); ++i)
                integral += hw * rule.w[i] * jacobi_p(j, par, c + hw * rule.x[i], true);
        }
        integral *= 0.5;  // map [-1,1] -> [0,1]
        const double term = decay * jacobi_p(j, par, xz, true) * integral;
        total += term;
        if (decay < ctl.tol && j > 2) break;
        if (j + 1 == ctl.max_terms)
            throw nonconvergence_error("jacobi_exit_tail: series did not converge");
    }
    const double value =
        std::exp(-g.c * t) * std::pow(z, l1) * std::pow(1.0 - z, l0) * cw * total;
    return std::clamp(value, 0.0, 1.0);
}

TailCurve tail_curve_series(const DihedralSystem& sys, const PolarPoint& x,
                            const std::vector<double>& t_grid, const std::string& which,
                            const SeriesControl& ctl) {
    TailCurve curve;
    curve.t_grid = t_grid;
    curve.method = "series";
    curve.values.resize(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (which == "case1")
            curve.values[i] = tail_series_case1(sys, x, t_grid[i], ctl);
        else if (which == "k1")
            curve.values[i] = tail_series_k1(sys, x, t_grid[i], ctl);
        else if (which == "case2")
            curve.values[i] = tail_series_case2(sys, x, t_grid[i], ctl);
        else
            throw std::invalid_argument("tail_curve_series: unknown variant " + which);
    }
    curve.meta = ctl.max_terms;
    return curve;
}

}  // namespace dunkl
