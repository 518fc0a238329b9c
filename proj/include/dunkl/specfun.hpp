#pragma once

#include <vector>

#include "dunkl/common.hpp"
#include "dunkl/dihedral.hpp"

namespace dunkl {

/// Jacobi/Laguerre weight exponents; both must exceed -1 for the weight to be
/// integrable.
struct PolyParams {
    double a;
    double b;
};

/// log Gamma(x) for x > 0.
double ln_gamma(double x);

/// Modified Bessel function I_nu(z) for nu >= 0, z >= 0, and the scaled
/// variant e^{-z} I_nu(z).  The scaled form stays finite for z up to 1e8;
/// the unscaled form throws std::overflow_error past the double range.
double bessel_i(double nu, double z);
double bessel_i_scaled(double nu, double z);

/// Scaled values e^{-z} I_{nu0 + k*stride}(z), k = 0..count-1, stride a
/// positive integer.  One downward-recurrence sweep serves all orders, which
/// is what every spectral series here needs.
std::vector<double> bessel_i_scaled_seq(double nu0, double z, int count, int stride);

/// 0F1(; b; z).  b must not be a nonpositive integer.
double hyp0f1(double b, double z, const SeriesControl& ctl = {});

/// 1F1(a; b; z).  Negative arguments always route through the Kummer
/// transform 1F1(a,b,z) = e^z 1F1(b-a, b, -z); direct summation at z < 0
/// cancels catastrophically.
double hyp1f1(double a, double b, double z, const SeriesControl& ctl = {});

/// e^{-z} 1F1(a; b; z) for z >= 0, finite even when 1F1 itself overflows.
double hyp1f1_scaled(double a, double b, double z);
/// log of the same quantity; the spectral mixtures combine it with large
/// Gamma-ratio exponents in log space.
double hyp1f1_scaled_log(double a, double b, double z);

/// Jacobi polynomial P_j^{(a,b)}(x) by three-term recurrence; |x| <= 1.
/// With normalized=true the value is divided by the L2 norm under
/// (1-x)^a (1+x)^b on [-1,1], so the orthonormality integral is delta_ij.
double jacobi_p(int j, PolyParams params, double x, bool normalized = false);

/// log of the squared L2 norm of P_j^{(a,b)} under its weight.
double jacobi_norm2_log(int j, double a, double b);

/// Generalized Laguerre polynomial L_q^alpha(x), alpha > -1, by recurrence.
double laguerre_l(int q, double alpha, double x);

/// Chebyshev polynomials by recurrence: T_j(cos t) = cos(j t),
/// U_j(cos t) = sin((j+1)t)/sin(t) with the limit value j+1 at the endpoints.
double chebyshev_t(int j, double x);
double chebyshev_u(int j, double x);

/// Generalized Gegenbauer polynomial C_{2j}^{k1,k0}(x), evaluated through the
/// quadratic substitution C_{2j}^{k1,k0}(x) = ratio * P_j^{(k0-1/2,k1-1/2)}(2x^2-1).
/// The convention is fixed so that k1 = 0 reproduces the classical Gegenbauer
/// polynomial C_{2j}^{k0}.
double gen_gegenbauer(int j, double k1, double k0, double x);
/// The proportionality constant in the substitution above.
double gen_gegenbauer_ratio(int j, double k1, double k0);

/// S2(j) = (1/p) * Int_0^1 P~_j(2s-1) ds with P~ the orthonormal Jacobi
/// polynomial of the system's angular weight; Gauss-Legendre of order 128
/// (composite panels keep the rule exact for high degrees).
double s2_integral(int j, const DihedralSystem& sys);

/// F(j) = Int_0^1 (1-s)^{l0} P~_j(2s-1) ds with P~ the orthonormal Jacobi
/// polynomial of the tilted weight (l0, -l1); only defined in the regime
/// k1 < 1/2 <= k0.  Gauss-Jacobi nodes absorb the endpoint weight.
double f_integral(int j, const DihedralSystem& sys);
double f_integral_order(int j, const DihedralSystem& sys, int order);

/// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
double gammainc_p(double a, double x);
double gammainc_q(double a, double x);

/// Regularized incomplete beta function I_x(a, b).
double betainc(double a, double b, double x);

}  // namespace dunkl
