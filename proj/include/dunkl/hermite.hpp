#pragma once

#include "dunkl/common.hpp"
#include "dunkl/dihedral.hpp"

namespace dunkl {

/// Index of a W-invariant Hermite polynomial: tau = (2q, 2jp),
/// total degree 2q + 2jp.  Odd components do not occur.
struct HermiteIndex {
    int q = 0;  // Laguerre degree
    int j = 0;  // harmonic degree
};

/// j-th W-invariant harmonic h_j^W(rho, phi) = rho^{2jp} P~_j(cos 2p phi);
/// homogeneous of degree 2jp.
double w_invariant_harmonic(const DihedralSystem& sys, int j, const PolarPoint& x);

/// W-invariant generalized Hermite polynomial
///   H_{2q,2jp}(rho,phi) = sqrt(q! / Gamma(2jp+q+gamma+1)) (rho^2/2)^{jp}
///                         L_q^{2jp+gamma}(rho^2/2) P~_j(cos 2p phi).
double hermite_w(const DihedralSystem& sys, HermiteIndex idx, const PolarPoint& x);

/// Closed form of the heat transform e^{-Delta_k/2}[rho^{2q} h_j^W]:
///   (-2)^q q! L_q^{2jp+gamma}(rho^2/2) rho^{2jp} P~_j(cos 2p phi).
/// For q = 0 this reduces to h_j^W itself (harmonics are fixed points).
/// The ratio to hermite_w is x-independent; the absolute constant is not
/// asserted anywhere (conventions for it differ between sources).
double heat_image(const DihedralSystem& sys, int q, int j, const PolarPoint& x);

/// Relative residual of the Mehler-type generating identity
///   sum_tau H(x) H(y) r^{|tau|}
///     = |W| (1-r^2)^{-gamma-1} exp(-r^2(|x|^2+|y|^2)/(2(1-r^2)))
///       D_k^W(x, r y / (1-r^2)),
/// with the left side truncated at total degree degree_max and H the
/// hermite_w values scaled by sqrt(|W| c_{p,k}) (the normalization the
/// identity itself fixes).
double mehler_check(const DihedralSystem& sys, const PolarPoint& x, const PolarPoint& y,
                    double r, int degree_max = 80, const SeriesControl& ctl = {});

}  // namespace dunkl
