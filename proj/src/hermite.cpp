#include "dunkl/hermite.hpp"

#include <cmath>
#include <stdexcept>

#include "dunkl/specfun.hpp"
#include "dunkl/spectral.hpp"

namespace dunkl {

double w_invariant_harmonic(const DihedralSystem& sys, int j, const PolarPoint& x) {
    if (j < 0) throw std::domain_error("w_invariant_harmonic: j >= 0 required");
    const double ang = jacobi_p(j, {sys.l0, sys.l1}, std::cos(2.0 * sys.p * x.theta), true);
    if (j == 0) return ang;
    return std::pow(x.r, 2.0 * j * sys.p) * ang;
}

double hermite_w(const DihedralSystem& sys, HermiteIndex idx, const PolarPoint& x) {
    if (idx.q < 0 || idx.j < 0) throw std::domain_error("hermite_w: indices must be >= 0");
    const double alpha = 2.0 * idx.j * sys.p + sys.gamma;
    const double u = 0.5 * x.r * x.r;
    const double lognorm = 0.5 * (std::lgamma(idx.q + 1.0) - std::lgamma(alpha + idx.q + 1.0));
    double v = std::exp(lognorm) * laguerre_l(idx.q, alpha, u) *
               jacobi_p(idx.j, {sys.l0, sys.l1}, std::cos(2.0 * sys.p * x.theta), true);
    if (idx.j > 0) v *= std::pow(u, idx.j * sys.p);
    return v;
}

double heat_image(const DihedralSystem& sys, int q, int j, const PolarPoint& x) {
    if (q < 0 || j < 0) throw std::domain_error("heat_image: indices must be >= 0");
    const double alpha = 2.0 * j * sys.p + sys.gamma;
    const double u = 0.5 * x.r * x.r;
    double c = 1.0;
    for (int m = 1; m <= q; ++m) c *= -2.0 * m;
    double v = c * laguerre_l(q, alpha, u) *
               jacobi_p(j, {sys.l0, sys.l1}, std::cos(2.0 * sys.p * x.theta), true);
    if (j > 0) v *= std::pow(x.r, 2.0 * j * sys.p);
    return v;
}

double mehler_check(const DihedralSystem& sys, const PolarPoint& x, const PolarPoint& y,
                    double r, int degree_max, const SeriesControl& ctl) {
    if (!(r > 0.0 && r < 1.0)) throw std::domain_error("mehler_check: r must lie in (0,1)");
    if (r > 0.95) throw nonconvergence_error("mehler_check: r too close to 1");
    const double wc = sys.group_order * gbf_constant(sys);
    double lhs = 0.0;
    for (int d = 0; d <= degree_max; d += 2) {
        for (int j = 0; 2 * j * sys.p <= d; ++j) {
            const int rem = d - 2 * j * sys.p;
            if (rem % 2 != 0) continue;
            const HermiteIndex idx{rem / 2, j};
            lhs += hermite_w(sys, idx, x) * hermite_w(sys, idx, y) * std::pow(r, d);
        }
    }
    lhs *= wc;

    const double r2 = r * r;
    const double scale = r / (1.0 - r2);
    const PolarPoint ys{scale * y.r, y.theta};
    const double xx = x.r * x.r, yy = y.r * y.r;
    const double rhs = sys.group_order * std::pow(1.0 - r2, -sys.gamma - 1.0) *
                       std::exp(-r2 * (xx + yy) / (2.0 * (1.0 - r2))) *
                       generalized_bessel(sys, x, ys, ctl);
    return std::abs(lhs - rhs) / std::abs(rhs);
}

}  // namespace dunkl
