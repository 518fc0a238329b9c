#include "dunkl/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dunkl {

namespace {

constexpr double kStepGrowthRef = 0.25;  // driving step grows as dt (1 + s/ref)
constexpr double kZeroFloor = 1e-300;

/// Driving step: grows with the clock but shrinks when the radial driver
/// dips, keeping the per-step relative move of Z bounded (the clock
/// integrands 1/Z and Z^{-e} are steep there).
double driving_step(double dt, double s, double z) {
    const double grow = dt * (1.0 + s / kStepGrowthRef);
    return std::min(grow, std::max(0.02 * z, 1e-3 * dt));
}

/// Integral of (a + (b-a) u/h)^{-e} du over [0, h]: the clock increments are
/// exact for the piecewise-linear interpolant of Z, which removes the
/// one-signed convexity bias a plain trapezoid accumulates across radial dips.
double clock_increment(double a, double b, double h, double e) {
    const double d = b - a;
    if (std::abs(d) < 1e-9 * (a + b))
        return h * std::pow(0.5 * (a + b), -e);
    if (e == 1.0) return h * std::log(b / a) / d;
    const double om = 1.0 - e;
    return h * (std::pow(b, om) - std::pow(a, om)) / (om * d);
}

/// Deterministic driving-horizon estimate: with Z ~ z0 + D s the time change
/// integrates in closed form.
double horizon_estimate(double t_max, double z0, double dims, int p) {
    const double D = std::max(dims, 1e-2);
    const double base = std::pow(z0, 1.0 / p);
    return (std::pow(t_max * D / p + base, p) - z0) / D + 10.0 * t_max;
}

}  // namespace

double sample_squared_bessel(double dim, double z0, double dt, Philox& rng) {
    if (dim < 0.0 || z0 < 0.0 || dt <= 0.0)
        throw std::domain_error("sample_squared_bessel: domain");
    return squared_bessel_step(rng, dim, z0, dt);
}

JacobiSkewPath simulate_jacobi_skew(double k0, double k1, double j0,
                                    const std::vector<double>& grid, Philox& rng) {
    if (k0 < 0.0 || k1 < 0.0) throw std::domain_error("simulate_jacobi_skew: k >= 0 required");
    if (j0 < 0.0 || j0 > 1.0) throw std::domain_error("simulate_jacobi_skew: j0 in [0,1]");
    const double d = 2.0 * k1 + 1.0, dp = 2.0 * k0 + 1.0;
    JacobiSkewPath path;
    path.f.resize(grid.size());
    path.j.resize(grid.size());
    double z1 = j0, z2 = 1.0 - j0;
    double f = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0) {
            const double h = grid[i] - grid[i - 1];
            if (h <= 0.0) throw std::invalid_argument("simulate_jacobi_skew: grid not increasing");
            const double zsum_prev = z1 + z2;
            z1 = squared_bessel_step(rng, d, z1, h);
            z2 = squared_bessel_step(rng, dp, z2, h);
            const double zsum = z1 + z2;
            if (zsum < kZeroFloor)
                throw std::runtime_error("simulate_jacobi_skew: driving sum degenerated to zero");
            f += clock_increment(zsum_prev, zsum, h, 1.0);
        }
        path.f[i] = f;
        path.j[i] = z1 / (z1 + z2);
    }
    return path;
}

double jacobi_skew_at(double k0, double k1, double j0, double t, double dt, Philox& rng) {
    const double d = 2.0 * k1 + 1.0, dp = 2.0 * k0 + 1.0;
    double z1 = j0, z2 = 1.0 - j0;
    double f = 0.0, s = 0.0;
    double j_prev = j0;
    const double s_cap = 64.0 * (t + 1.0) * std::exp((d + dp) * t);
    while (true) {
        const double zsum_prev = z1 + z2;
        const double h = driving_step(dt, s, zsum_prev);
        z1 = squared_bessel_step(rng, d, z1, h);
        z2 = squared_bessel_step(rng, dp, z2, h);
        const double zsum = z1 + z2;
        if (zsum < kZeroFloor)
            throw std::runtime_error("jacobi_skew_at: driving sum degenerated to zero");
        const double f_next = f + clock_increment(zsum_prev, zsum, h, 1.0);
        const double j_next = z1 / zsum;
        if (f_next >= t) {
            const double alpha = (t - f) / (f_next - f);
            return j_prev + alpha * (j_next - j_prev);
        }
        f = f_next;
        j_prev = j_next;
        s += h;
        if (s > s_cap) throw std::runtime_error("jacobi_skew_at: horizon exceeded");
    }
}

std::vector<double> simulate_jacobi_euler(double k0, double k1, double j0,
                                          const std::vector<double>& grid, Philox& rng) {
    const double d = 2.0 * k1 + 1.0, dp = 2.0 * k0 + 1.0;
    std::vector<double> out(grid.size());
    double j = j0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0) {
            const double h = grid[i] - grid[i - 1];
            const double drift = d - (d + dp) * j;
            const double diff = 2.0 * std::sqrt(std::max(0.0, j * (1.0 - j)));
            j += drift * h + diff * std::sqrt(h) * rng.normal();
            j = std::clamp(j, 0.0, 1.0);
        }
        out[i] = j;
    }
    return out;
}

namespace {

struct PathScratch {
    // resampled values at user times
    std::vector<double> r, th, fl, l;
};

/// Advances one driving path, resampling (r, theta, F_L, L) at the user grid
/// through the piecewise-linear inverse of tau.  Returns false if the horizon
/// cap was hit before covering the grid.
bool run_resampled_path(const DihedralSystem& sys, const SimConfig& cfg, Philox& rng,
                        PathScratch& out, const std::vector<double>& times) {
    const int p = sys.p;
    const double d = 2.0 * sys.k1 + 1.0, dp = 2.0 * sys.k0 + 1.0;
    const double expo = (p - 1.0) / p;
    const double rho0 = cfg.start.r, phi0 = cfg.start.theta;
    const double z0 = std::pow(rho0 / p, 2.0 * p);
    const double c0 = std::cos(p * phi0);

    double s = 0.0, tau = 0.0, f = 0.0;
    double z1 = z0 * c0 * c0;
    double z2 = z0 - z1;

    const std::size_t n = times.size();
    out.r.resize(n);
    out.th.resize(n);
    out.fl.resize(n);
    out.l.resize(n);

    auto record = [&](std::size_t k, double zsum, double z1v, double f, double l) {
        out.r[k] = p * std::pow(zsum, 1.0 / (2.0 * p));
        const double ratio = std::clamp(z1v / zsum, 0.0, 1.0);
        out.th[k] = std::acos(std::sqrt(ratio)) / p;
        out.fl[k] = f;
        out.l[k] = l;
    };

    std::size_t k = 0;
    if (!times.empty() && times[0] == 0.0) record(k++, z1 + z2, z1, 0.0, 0.0);

    const double s_cap = cfg.horizon_factor * horizon_estimate(cfg.t_max, z0, d + dp, p);
    while (k < n) {
        const double zsum_prev = z1 + z2;
        const double h = driving_step(cfg.dt, s, zsum_prev);
        const double z1n = squared_bessel_step(rng, d, z1, h);
        const double z2n = squared_bessel_step(rng, dp, z2, h);
        const double zsum = std::max(z1n + z2n, kZeroFloor);
        const double tau_next = tau + clock_increment(zsum_prev, zsum, h, expo);
        const double f_next = f + clock_increment(zsum_prev, zsum, h, 1.0);
        while (k < n && times[k] <= tau_next) {
            const double alpha = (tau_next > tau) ? (times[k] - tau) / (tau_next - tau) : 1.0;
            const double zs = zsum_prev + alpha * (zsum - zsum_prev);
            const double z1s = z1 + alpha * (z1n - z1);
            const double fs = f + alpha * (f_next - f);
            record(k++, zs, z1s, fs, s + alpha * h);
        }
        z1 = z1n;
        z2 = z2n;
        tau = tau_next;
        f = f_next;
        s += h;
        if (s > s_cap && k < n) return false;
    }
    return true;
}

}  // namespace

PathEnsemble build_dunkl_path(const DihedralSystem& sys, const SimConfig& cfg) {
    if (cfg.t_max <= 0.0 || cfg.dt <= 0.0 || cfg.n_paths < 1 || cfg.n_snap < 2)
        throw std::invalid_argument("build_dunkl_path: bad configuration");
    if (cfg.dt > cfg.t_max / 100.0)
        throw std::invalid_argument("build_dunkl_path: dt must be <= t_max/100");
    if (!(cfg.start.r > 0.0) || cfg.start.theta < 0.0 || cfg.start.theta > sys.chamber_angle)
        throw std::invalid_argument("build_dunkl_path: start must lie in the chamber");

    PathEnsemble ens;
    ens.n_paths = cfg.n_paths;
    ens.n_snap = cfg.n_snap;
    ens.bridge_correction = cfg.bridge_correction;
    ens.times.resize(cfg.n_snap);
    for (int k = 0; k < cfg.n_snap; ++k)
        ens.times[k] = cfg.t_max * k / static_cast<double>(cfg.n_snap - 1);
    const std::size_t total = static_cast<std::size_t>(cfg.n_paths) * cfg.n_snap;
    ens.radial.resize(total);
    ens.angular.resize(total);
    ens.clock_a.resize(total);
    ens.clock_fl.resize(total);
    ens.clock_l.resize(total);

    std::vector<char> failed(cfg.n_paths, 0);
    detail::parallel_for(cfg.n_paths, [&](std::size_t lo, std::size_t hi) {
        PathScratch scratch;
        for (std::size_t i = lo; i < hi; ++i) {
            Philox rng(cfg.seed, i);
            if (!run_resampled_path(sys, cfg, rng, scratch, ens.times)) {
                failed[i] = 1;
                continue;
            }
            const std::size_t off = i * cfg.n_snap;
            double a = 0.0;
            for (int k = 0; k < cfg.n_snap; ++k) {
                ens.radial[off + k] = scratch.r[k];
                ens.angular[off + k] = scratch.th[k];
                ens.clock_fl[off + k] = scratch.fl[k];
                ens.clock_l[off + k] = scratch.l[k];
                if (k > 0) {
                    const double dtk = ens.times[k] - ens.times[k - 1];
                    a += 0.5 * dtk *
                         (1.0 / (scratch.r[k - 1] * scratch.r[k - 1]) +
                          1.0 / (scratch.r[k] * scratch.r[k]));
                }
                ens.clock_a[off + k] = a;
            }
        }
    });
    for (int i = 0; i < cfg.n_paths; ++i)
        if (failed[i])
            throw std::runtime_error(
                "build_dunkl_path: driving horizon exhausted (tau inversion not covered); "
                "raise horizon_factor or t_max resolution");
    return ens;
}

Snapshot sample_snapshot(const DihedralSystem& sys, const SimConfig& cfg, double t_snap) {
    SimConfig c = cfg;
    c.t_max = t_snap;
    c.n_snap = 2;
    const PathEnsemble ens = build_dunkl_path(sys, c);
    Snapshot snap;
    snap.r.resize(cfg.n_paths);
    snap.theta.resize(cfg.n_paths);
    for (int i = 0; i < cfg.n_paths; ++i) {
        snap.r[i] = ens.r(i, 1);
        snap.theta[i] = ens.theta(i, 1);
    }
    return snap;
}

HittingResult sample_hitting_time(const DihedralSystem& sys, const SimConfig& cfg) {
    if (cfg.t_max <= 0.0 || cfg.dt <= 0.0 || cfg.n_paths < 1)
        throw std::invalid_argument("sample_hitting_time: bad configuration");
    if (!(cfg.start.r > 0.0) || cfg.start.theta <= 0.0 || cfg.start.theta >= sys.chamber_angle)
        throw std::invalid_argument("sample_hitting_time: start must be strictly inside");

    const int p = sys.p;
    const double d = 2.0 * sys.k1 + 1.0, dp = 2.0 * sys.k0 + 1.0;
    const double expo = (p - 1.0) / p;
    HittingResult result;
    result.hitting_possible = (sys.l0 < 0.0) || (sys.l1 < 0.0);
    result.bridge_correction = cfg.bridge_correction;
    result.samples.resize(cfg.n_paths);

    const double z0 = std::pow(cfg.start.r / p, 2.0 * p);
    const double c0 = std::cos(p * cfg.start.theta);
    const double s_cap = cfg.horizon_factor * horizon_estimate(cfg.t_max, z0, d + dp, p);
    // A wall can only be reached when its squared Bessel has dimension < 2;
    // applying the crossing correction at a repelling wall would inject
    // spurious hits.
    const bool wall_j0 = d < 2.0;   // J = 0 <=> z1 = 0 <=> theta at pi/(2p)
    const bool wall_j1 = dp < 2.0;  // J = 1 <=> z2 = 0 <=> theta at 0

    detail::parallel_for(cfg.n_paths, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            Philox rng(cfg.seed, i);
            double z1 = z0 * c0 * c0, z2 = z0 - z1;
            double s = 0.0, tau = 0.0, f = 0.0;
            HitSample out{cfg.t_max, true};
            while (tau < cfg.t_max) {
                const double zsum_prev = z1 + z2;
                const double h = driving_step(cfg.dt, s, zsum_prev);
                const double z1n = squared_bessel_step(rng, d, z1, h);
                const double z2n = squared_bessel_step(rng, dp, z2, h);
                const double zsum = std::max(z1n + z2n, kZeroFloor);
                const double tau_next = tau + clock_increment(zsum_prev, zsum, h, expo);
                const double f_next = f + clock_increment(zsum_prev, zsum, h, 1.0);

                bool hit = (wall_j0 && z1n < kZeroFloor) || (wall_j1 && z2n < kZeroFloor);
                if (!hit && cfg.bridge_correction) {
                    // Crossing correction in the angular coordinate
                    // M = arccos(sqrt(J)), where the Jacobi diffusion has unit
                    // coefficient on the F clock; in the J coordinate itself a
                    // frozen-coefficient bridge misprices boundary touches by
                    // orders of magnitude near the walls.
                    const double j_prev = z1 / zsum_prev, j_next = z1n / zsum;
                    const double df = f_next - f;
                    const double m_prev = std::acos(std::sqrt(std::clamp(j_prev, 0.0, 1.0)));
                    const double m_next = std::acos(std::sqrt(std::clamp(j_next, 0.0, 1.0)));
                    const double half_pi = 0.5 * std::numbers::pi;
                    if (wall_j0) {  // J = 0 wall sits at M = pi/2
                        const double pc =
                            std::exp(-2.0 * (half_pi - m_prev) * (half_pi - m_next) / df);
                        if (rng.next_double() < pc) hit = true;
                    }
                    if (!hit && wall_j1) {  // J = 1 wall sits at M = 0
                        const double pc = std::exp(-2.0 * m_prev * m_next / df);
                        if (rng.next_double() < pc) hit = true;
                    }
                }
                if (hit) {
                    out = {std::min(tau_next, cfg.t_max), tau_next > cfg.t_max};
                    break;
                }
                z1 = z1n;
                z2 = z2n;
                tau = tau_next;
                f = f_next;
                s += h;
                if (s > s_cap) break;  // censored at horizon
            }
            result.samples[i] = out;
        }
    });
    return result;
}

std::vector<HitSample> wedge_exit_mc(double wedge_angle, const PolarPoint& start, double t_max,
                                     double dt, int n_paths, std::uint64_t seed) {
    if (wedge_angle <= 0.0 || t_max <= 0.0 || dt <= 0.0 || n_paths < 1)
        throw std::invalid_argument("wedge_exit_mc: bad configuration");
    const double sa = std::sin(wedge_angle), ca = std::cos(wedge_angle);
    const int n_steps = static_cast<int>(std::ceil(t_max / dt));
    std::vector<HitSample> hits(n_paths);
    detail::parallel_for(n_paths, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            Philox rng(seed, i);
            double x = start.r * std::cos(start.theta);
            double y = start.r * std::sin(start.theta);
            double d0 = y, d1 = x * sa - y * ca;
            HitSample out{t_max, true};
            const double sq = std::sqrt(dt);
            for (int k = 1; k <= n_steps; ++k) {
                x += sq * rng.normal();
                y += sq * rng.normal();
                const double e0 = y, e1 = x * sa - y * ca;
                bool hit = (e0 <= 0.0 || e1 <= 0.0);
                if (!hit) {
                    // Brownian-bridge crossing probability for each wall line.
                    const double p0 = std::exp(-2.0 * d0 * e0 / dt);
                    const double p1 = std::exp(-2.0 * d1 * e1 / dt);
                    hit = rng.next_double() < (p0 + p1 - p0 * p1);
                }
                if (hit) {
                    out = {std::min(k * dt, t_max), false};
                    break;
                }
                d0 = e0;
                d1 = e1;
            }
            hits[i] = out;
        }
    });
    return hits;
}

std::vector<double> survival_curve(const std::vector<HitSample>& hits,
                                   const std::vector<double>& t_grid) {
    std::vector<double> surv(t_grid.size(), 0.0);
    for (const auto& h : hits) {
        for (std::size_t k = 0; k < t_grid.size(); ++k) {
            if (h.censored || h.t0 > t_grid[k]) surv[k] += 1.0;
        }
    }
    const double n = static_cast<double>(hits.size());
    for (double& v : surv) v /= n;
    return surv;
}

}  // namespace dunkl
