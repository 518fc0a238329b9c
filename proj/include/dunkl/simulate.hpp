#pragma once

#include <cstdint>
#include <vector>

#include "dunkl/common.hpp"
#include "dunkl/dihedral.hpp"
#include "dunkl/rng.hpp"

namespace dunkl {

/// Simulation configuration.  `dt` is the base step of the driving clock;
/// the actual step grows proportionally to the driving time (the exact
/// squared-Bessel transition is valid for any step, only the time-change
/// quadrature and hit detection depend on resolution, and both are checked
/// by the dt-refinement tests).
struct SimConfig {
    double t_max = 1.0;
    double dt = 1e-3;
    int n_paths = 1;
    std::uint64_t seed = 0;
    PolarPoint start{1.0, 0.0};
    int n_snap = 201;                // user-grid resolution
    bool bridge_correction = true;   // boundary-crossing correction for J
    double horizon_factor = 8.0;     // driving-horizon auto-extension cap
};

/// Seeded collection of simulated paths resampled on the user's time grid.
/// Rows are paths, columns snap times; clocks carry (A_t, F_{L_t}, L_t).
struct PathEnsemble {
    std::vector<double> times;
    int n_paths = 0;
    int n_snap = 0;
    std::vector<double> radial;    // |X_t|
    std::vector<double> angular;   // theta_{A_t}
    std::vector<double> clock_a;   // A_t by trapezoid on the user grid
    std::vector<double> clock_fl;  // F_{L_t} by trapezoid on the driving grid
    std::vector<double> clock_l;   // L_t
    bool bridge_correction = false;

    double r(int path, int k) const { return radial[static_cast<std::size_t>(path) * n_snap + k]; }
    double theta(int path, int k) const {
        return angular[static_cast<std::size_t>(path) * n_snap + k];
    }
};

struct HitSample {
    double t0 = 0.0;
    bool censored = false;
};

struct HittingResult {
    std::vector<HitSample> samples;
    bool hitting_possible = true;  // false when both indices are >= 0
    bool bridge_correction = false;
};

/// One exact-in-law transition step of a squared Bessel process of dimension
/// dim over dt (noncentral chi-square).
double sample_squared_bessel(double dim, double z0, double dt, Philox& rng);

/// Jacobi path by the skew product of two squared Bessel processes of
/// dimensions d = 2 k1 + 1, d' = 2 k0 + 1: j[i] = Z1/(Z1+Z2) at grid[i], and
/// f[i] the accumulated clock F = int ds/(Z1+Z2).  J as a process of its own
/// time is read through (f, j) pairs.
struct JacobiSkewPath {
    std::vector<double> f;
    std::vector<double> j;
};
JacobiSkewPath simulate_jacobi_skew(double k0, double k1, double j0,
                                    const std::vector<double>& grid, Philox& rng);

/// Value of the skew-product Jacobi process at its own time t (inverts the
/// F clock by linear interpolation, extending the driving grid as needed).
double jacobi_skew_at(double k0, double k1, double j0, double t, double dt, Philox& rng);

/// Euler-Maruyama path of the Jacobi SDE
///   dJ = 2 sqrt(J(1-J)) dB + (d - (d+d') J) dt
/// on the given grid, clamped to [0,1] after each step.  Serves as the
/// independent oracle for the skew-product construction.
std::vector<double> simulate_jacobi_euler(double k0, double k1, double j0,
                                          const std::vector<double>& grid, Philox& rng);

/// Pathwise construction of the radial Dunkl process from two independent
/// squared Bessel processes, resampled on the user grid through the time
/// change tau = int ds / (Z1+Z2)^{(p-1)/p}.
PathEnsemble build_dunkl_path(const DihedralSystem& sys, const SimConfig& cfg);

/// (r, theta) snapshot of the process at a single time, streamed so large
/// ensembles do not hold full paths.
struct Snapshot {
    std::vector<double> r;
    std::vector<double> theta;
};
Snapshot sample_snapshot(const DihedralSystem& sys, const SimConfig& cfg, double t_snap);

/// First hitting time of the chamber boundary per path (censored at t_max).
HittingResult sample_hitting_time(const DihedralSystem& sys, const SimConfig& cfg);

/// Direct planar-Brownian exit-time Monte Carlo from a wedge of the given
/// angle; shares no code with the Bessel machinery (oracle for k = 1 tails).
std::vector<HitSample> wedge_exit_mc(double wedge_angle, const PolarPoint& start, double t_max,
                                     double dt, int n_paths, std::uint64_t seed);

/// Empirical survival curve P(T0 > t) on a time grid.
std::vector<double> survival_curve(const std::vector<HitSample>& hits,
                                   const std::vector<double>& t_grid);

}  // namespace dunkl
