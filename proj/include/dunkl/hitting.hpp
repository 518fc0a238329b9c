#pragma once

#include <string>
#include <vector>

#include "dunkl/common.hpp"
#include "dunkl/dihedral.hpp"

namespace dunkl {

/// Parameters of the absolute-continuity relation between Jacobi laws of
/// dimensions (d1, d1') and (d2, d2').
struct GirsanovParams {
    double kappa = 0.0;
    double beta = 0.0;
    double u = 0.0;
    double v = 0.0;
    double c = 0.0;
};

GirsanovParams girsanov_params(double d1, double d1p, double d2, double d2p);

/// Sampled tail function t -> P(T0 > t).
struct TailCurve {
    std::vector<double> t_grid;
    std::vector<double> values;
    std::string method;  // "series" or "mc"
    long meta = 0;       // terms (series) or paths (mc)
};

/// Tail of the first hitting time of the chamber boundary for the process of
/// index -l, in the regime 1/2 <= k0,k1 <= 1 with at least one k > 1/2.
double tail_series_case1(const DihedralSystem& sys, const PolarPoint& x, double t,
                         const SeriesControl& ctl = {});

/// Same quantity computed through the Jacobi exit representation with the
/// radial mixture done by quadrature over the Bessel semigroup; an
/// independent route used to cross-check the closed form.
double tail_series_case1_dual(const DihedralSystem& sys, const PolarPoint& x, double t,
                              const SeriesControl& ctl = {});

/// k0 = k1 = 1 specialization (Brownian exit from the wedge): the Gauss
/// duplication formula collapses the 1F1 factors into modified Bessel pairs.
double tail_series_k1(const DihedralSystem& sys, const PolarPoint& x, double t,
                      const SeriesControl& ctl = {});

/// Second-case tail: exactly one of k0, k1 below 1/2 (that index strictly
/// negative), taken for the process of index l itself.  The mirrored case
/// k0 < 1/2 <= k1 routes through the reflection phi -> pi/(2p) - phi.
double tail_series_case2(const DihedralSystem& sys, const PolarPoint& x, double t,
                         const SeriesControl& ctl = {});

/// Exit-time tail of a Jacobi process of index (-l1, -l0) started at z,
/// written as a reweighted expectation under the (l1, l0) law and integrated
/// by quadrature against the spectral Jacobi density.  Requires
/// 0 <= l0, l1 < 1.
double jacobi_exit_tail(double k0, double k1, double z, double t, const SeriesControl& ctl = {});

/// Series tail curve over a grid; `which` selects case1 | k1 | case2.
TailCurve tail_curve_series(const DihedralSystem& sys, const PolarPoint& x,
                            const std::vector<double>& t_grid, const std::string& which,
                            const SeriesControl& ctl = {});

}  // namespace dunkl
