#pragma once

#include <vector>

#include "dunkl/common.hpp"
#include "dunkl/dihedral.hpp"

namespace dunkl {

/// Angular generator eigenvalue lambda_j = -2 j (j + k0 + k1).
double angular_eigenvalue(const DihedralSystem& sys, int j);

/// Semigroup density m_t^k(phi, theta) of the normalized angular process on
/// [0, pi/2], a probability density in theta for every (t, phi).
DensityValue angular_density(const DihedralSystem& sys, double t, double phi, double theta,
                             const SeriesControl& ctl = {});

/// Semigroup density of the chamber-valued angle: K_t^{k,p}(phi, theta)
/// = p * m_{p^2 t}(p phi, p theta) on [0, pi/(2p)].
DensityValue angular_density_chamber(const DihedralSystem& sys, double t, double phi,
                                     double theta, const SeriesControl& ctl = {});

/// Bessel semigroup density q_t(rho, r) of index gamma_idx w.r.t. dr, with the
/// analytic rho -> 0 limit built in.
double bessel_semigroup(double gamma_idx, double t, double rho, double r);

/// CDF of the same law (noncentral chi-square mixture), used as the KS oracle
/// for the simulated radial marginal.
double bessel_semigroup_cdf(double gamma_idx, double t, double rho, double r);

/// E[ exp(lambda_j p^2 A_t) | |X_t| = r ] = I_{2jp+gamma}(rho r/t) / I_gamma(rho r/t).
double conditional_laplace(const DihedralSystem& sys, int j, double t, double rho, double r);

/// Unconditional radial mixture E_rho^gamma[sweep e^{lambda_j p^2 A_t}],
/// in closed form through 1F1.
double radial_mixture(const DihedralSystem& sys, int j, double t, double rho);

/// Transition density p_t^k(x, y) of the radial Dunkl process w.r.t. dr dtheta.
/// The normalizing constant is fixed once per system by quadrature (mass 1)
/// and cached.
DensityValue transition_density(const DihedralSystem& sys, double t, const PolarPoint& x,
                                const PolarPoint& y, const SeriesControl& ctl = {});

/// Row of transition densities over a theta grid at fixed (t, x, r); the
/// angular sweep runs through the batched series kernel.
std::vector<double> transition_density_theta_row(const DihedralSystem& sys, double t,
                                                 const PolarPoint& x, double r,
                                                 const std::vector<double>& thetas,
                                                 const SeriesControl& ctl = {});

/// k == 0 specialization: planar Brownian motion reflected on the chamber walls.
double reflected_kernel(const DihedralSystem& sys, double t, const PolarPoint& x,
                        const PolarPoint& y, const SeriesControl& ctl = {});

/// k == 1 specialization: Brownian motion conditioned to stay in the wedge
/// (the omega_1 Doob transform of the killed kernel).
double conditioned_kernel(const DihedralSystem& sys, double t, const PolarPoint& x,
                          const PolarPoint& y, const SeriesControl& ctl = {});

/// Dirichlet heat kernel of the wedge (killed at the boundary); a
/// sub-probability kernel.
double killed_kernel(const DihedralSystem& sys, double t, const PolarPoint& x,
                     const PolarPoint& y, const SeriesControl& ctl = {});

/// Generalized Bessel function D_k^W(x, y), normalized so that
/// D_k^W(0, y) = |W| = 2n.
double generalized_bessel(const DihedralSystem& sys, const PolarPoint& x, const PolarPoint& y,
                          const SeriesControl& ctl = {});

/// Marginal density of the angle theta at time t started from x (radial part
/// integrated out in closed form).
double angular_marginal(const DihedralSystem& sys, double t, const PolarPoint& x, double theta,
                        const SeriesControl& ctl = {});

/// Cached constants: the transition-density normalizer (fixed numerically by
/// mass 1) and the generalized-Bessel constant (fixed by the rho -> 0 limit).
double transition_norm_constant(const DihedralSystem& sys);
double gbf_constant(const DihedralSystem& sys);

/// log of the squared L2 norm of the degree-0 angular polynomial; shared by
/// several normalization formulas.
double angular_h0_log(const DihedralSystem& sys);

}  // namespace dunkl
