#include "dunkl/validate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"

#include "dunkl/hermite.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/spectral.hpp"
#include "dunkl/stats.hpp"

namespace dunkl {

double image_sum(const DihedralSystem& sys, double t, const PolarPoint& x, const PolarPoint& y,
                 bool signed_sum) {
    const int n = sys.n;
    const double rho = x.r, r = y.r, phi = x.theta, th = y.theta;
    const double two_pi = 2.0 * std::numbers::pi;
    double sum = 0.0;
    for (int l = 0; l < n; ++l) {
        // rotation by 2 pi l / n
        const double ang_rot = th + two_pi * l / n;
        const double d2_rot = rho * rho + r * r - 2.0 * rho * r * std::cos(phi - ang_rot);
        sum += std::exp(-d2_rot / (2.0 * t));
        // reflection across the line of angle pi l / n
        const double ang_ref = two_pi * l / n - th;
        const double d2_ref = rho * rho + r * r - 2.0 * rho * r * std::cos(phi - ang_ref);
        const double s = signed_sum ? -1.0 : 1.0;
        sum += s * std::exp(-d2_ref / (2.0 * t));
    }
    return r * sum / (two_pi * t);
}

namespace {

PolarPoint random_interior(const DihedralSystem& sys, Philox& rng, double r_lo, double r_hi) {
    const double r = r_lo + (r_hi - r_lo) * rng.next_double();
    const double th = sys.chamber_angle * (0.05 + 0.9 * rng.next_double());
    return {r, th};
}

std::string meta_json(std::initializer_list<std::pair<const char*, double>> kv) {
    nlohmann::json j;
    for (const auto& [k, v] : kv) j[k] = v;
    return j.dump();
}

}  // namespace

ValidationReport check_images_reflected(const DihedralSystem& sys, double t, int n_points,
                                        std::uint64_t seed) {
    ValidationReport rep;
    rep.check_name = "images_reflected_n" + std::to_string(sys.n);
    rep.threshold = 1e-8;
    Philox rng(seed, 0);
    double gap = 0.0;
    for (int i = 0; i < n_points; ++i) {
        const PolarPoint x = random_interior(sys, rng, 0.3, 1.8);
        const PolarPoint y = random_interior(sys, rng, 0.3, 1.8);
        const double a = reflected_kernel(sys, t, x, y);
        const double b = image_sum(sys, t, x, y, false);
        gap = std::max(gap, std::abs(a - b));
    }
    // degenerate point on the symmetry axis
    const PolarPoint mid{1.0, 0.5 * sys.chamber_angle};
    gap = std::max(gap, std::abs(reflected_kernel(sys, t, mid, mid) -
                                 image_sum(sys, t, mid, mid, false)));
    rep.statistic = gap;
    rep.passed = gap < rep.threshold;
    rep.meta = meta_json({{"t", t}, {"points", static_cast<double>(n_points)}});
    return rep;
}

ValidationReport check_images_killed(const DihedralSystem& sys, double t, int n_points,
                                     std::uint64_t seed) {
    ValidationReport rep;
    rep.check_name = "images_killed_n" + std::to_string(sys.n);
    rep.threshold = 1e-8;
    Philox rng(seed, 1);
    double gap = 0.0;
    for (int i = 0; i < n_points; ++i) {
        const PolarPoint x = random_interior(sys, rng, 0.3, 1.8);
        const PolarPoint y = random_interior(sys, rng, 0.3, 1.8);
        const double a = killed_kernel(sys, t, x, y);
        const double b = image_sum(sys, t, x, y, true);
        gap = std::max(gap, std::abs(a - b));
    }
    // boundary approach: kernel must vanish
    const PolarPoint inner{1.0, 0.5 * sys.chamber_angle};
    const double near_wall = killed_kernel(sys, t, {1.0, 1e-9}, inner);
    gap = std::max(gap, std::abs(near_wall - image_sum(sys, t, {1.0, 1e-9}, inner, true)));
    rep.statistic = gap;
    rep.passed = gap < rep.threshold;
    rep.meta = meta_json({{"t", t}, {"points", static_cast<double>(n_points)}});
    return rep;
}

namespace {

/// Radial quantile edges of the Bessel marginal by bisection on the CDF.
std::vector<double> radial_edges(const DihedralSystem& sys, double t, double rho, int nbins) {
    std::vector<double> edges(nbins + 1);
    edges[0] = 0.0;
    const double hi0 = std::sqrt(rho * rho + 2.0 * (sys.gamma + 1.0) * t) + 12.0 * std::sqrt(t);
    for (int i = 1; i <= nbins; ++i) {
        const double target = (i < nbins) ? static_cast<double>(i) / nbins : 1.0 - 1e-12;
        double lo = 0.0, hi = hi0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (bessel_semigroup_cdf(sys.gamma, t, rho, mid) < target ? lo : hi) = mid;
        }
        edges[i] = 0.5 * (lo + hi);
    }
    return edges;
}

}  // namespace

ValidationReport check_mc_density(const DihedralSystem& sys, const SimConfig& cfg, double t_snap) {
    ValidationReport rep;
    rep.check_name = "mc_density_n" + std::to_string(sys.n);
    rep.threshold = 0.01;  // p-value floor
    const int nb = 20;
    const Snapshot snap = sample_snapshot(sys, cfg, t_snap);

    const std::vector<double> redges = radial_edges(sys, t_snap, cfg.start.r, nb);
    std::vector<double> tedges(nb + 1);
    for (int i = 0; i <= nb; ++i) tedges[i] = sys.chamber_angle * i / nb;

    // Expected cell masses via a fixed Gauss rule per cell, batched over theta.
    const QuadRule& gl = gauss_legendre(12);
    std::vector<double> tnodes(nb * gl.x.size()), tw(nb * gl.x.size());
    for (int bt = 0; bt < nb; ++bt) {
        const double c = 0.5 * (tedges[bt + 1] + tedges[bt]), h = 0.5 * (tedges[bt + 1] - tedges[bt]);
        for (std::size_t q = 0; q < gl.x.size(); ++q) {
            tnodes[bt * gl.x.size() + q] = c + h * gl.x[q];
            tw[bt * gl.x.size() + q] = h * gl.w[q];
        }
    }
    std::vector<double> expected(nb * nb, 0.0);
    for (int br = 0; br < nb; ++br) {
        const double c = 0.5 * (redges[br + 1] + redges[br]), h = 0.5 * (redges[br + 1] - redges[br]);
        for (std::size_t qr = 0; qr < gl.x.size(); ++qr) {
            const double r = c + h * gl.x[qr];
            const auto row = transition_density_theta_row(sys, t_snap, cfg.start, r, tnodes);
            for (int bt = 0; bt < nb; ++bt) {
                double acc = 0.0;
                for (std::size_t q = 0; q < gl.x.size(); ++q)
                    acc += tw[bt * gl.x.size() + q] * row[bt * gl.x.size() + q];
                expected[br * nb + bt] += h * gl.w[qr] * acc;
            }
        }
    }

    std::vector<double> observed(nb * nb, 0.0);
    for (std::size_t i = 0; i < snap.r.size(); ++i) {
        const int br = std::clamp(
            static_cast<int>(std::upper_bound(redges.begin(), redges.end(), snap.r[i]) -
                             redges.begin()) - 1, 0, nb - 1);
        const int bt = std::clamp(static_cast<int>(snap.theta[i] / sys.chamber_angle * nb), 0,
                                  nb - 1);
        observed[br * nb + bt] += 1.0;
    }
    const Chi2Result chi = chi2_test(observed, expected, 10.0);
    rep.statistic = chi.p_value;
    rep.passed = chi.p_value > rep.threshold;
    rep.meta = meta_json({{"paths", static_cast<double>(cfg.n_paths)},
                          {"t", t_snap},
                          {"chi2", chi.statistic},
                          {"dof", static_cast<double>(chi.dof)}});
    return rep;
}

ValidationReport check_mehler(const DihedralSystem& sys,
                              const std::vector<std::pair<PolarPoint, PolarPoint>>& points) {
    ValidationReport rep;
    rep.check_name = "mehler_n" + std::to_string(sys.n);
    rep.threshold = 1e-8;
    double worst = 0.0;
    for (const auto& [x, y] : points)
        worst = std::max(worst, mehler_check(sys, x, y, 0.3, 80));
    rep.statistic = worst;
    rep.passed = worst < rep.threshold;
    rep.meta = meta_json({{"points", static_cast<double>(points.size())}, {"r", 0.3}});
    return rep;
}

std::vector<ValidationReport> run_all(const ValidateConfig& cfg) {
    std::vector<std::pair<std::string, std::function<ValidationReport()>>> jobs;
    const std::vector<std::pair<PolarPoint, PolarPoint>> mehler_pts = {
        {{0.8, 0.15}, {1.1, 0.2}}, {{0.5, 0.3}, {0.9, 0.1}}, {{1.3, 0.05}, {0.7, 0.22}}};

    jobs.emplace_back("images_reflected_n3", [&] {
        return check_images_reflected(make_system(3, 0.0), 0.4, 20, cfg.seed);
    });
    jobs.emplace_back("images_reflected_n4", [&] {
        return check_images_reflected(make_system(4, 0.0, 0.0), 0.4, 20, cfg.seed);
    });
    jobs.emplace_back("images_killed_n4", [&] {
        return check_images_killed(make_system(4, 1.0, 0.5), 0.5, 20, cfg.seed);
    });
    jobs.emplace_back("images_killed_n6", [&] {
        return check_images_killed(make_system(6, 1.0, 1.0), 0.5, 20, cfg.seed);
    });
    jobs.emplace_back("mc_density_n4", [&] {
        SimConfig sc;
        sc.t_max = 0.5;
        sc.dt = 2.5e-4;
        sc.n_paths = cfg.mc_paths;
        sc.seed = cfg.seed;
        sc.start = {1.0, std::numbers::pi / 8.0};
        return check_mc_density(make_system(4, 1.0, 0.5), sc, 0.5);
    });
    jobs.emplace_back("mehler_n4", [&] {
        auto pts = mehler_pts;
        for (auto& pr : pts) {
            pr.first.theta = std::min(pr.first.theta, 0.9 * std::numbers::pi / 4.0);
            pr.second.theta = std::min(pr.second.theta, 0.9 * std::numbers::pi / 4.0);
        }
        return check_mehler(make_system(4, 1.0, 0.5), pts);
    });
    jobs.emplace_back("mehler_n6", [&] {
        return check_mehler(make_system(6, 1.0, 1.0), mehler_pts);
    });
    jobs.emplace_back("mehler_n3", [&] {
        return check_mehler(make_system(3, 0.7), mehler_pts);
    });

    std::vector<ValidationReport> reports(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (!cfg.checks.empty() &&
            std::find(cfg.checks.begin(), cfg.checks.end(), jobs[i].first) == cfg.checks.end()) {
            continue;
        }
        reports[i] = jobs[i].second();
    }
    std::vector<ValidationReport> out;
    for (auto& r : reports)
        if (!r.check_name.empty()) out.push_back(std::move(r));
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.check_name < b.check_name; });
    return out;
}

std::string reports_to_json(const std::vector<ValidationReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json j;
        j["check"] = r.check_name;
        j["statistic"] = r.statistic;
        j["threshold"] = r.threshold;
        j["passed"] = r.passed;
        j["meta"] = nlohmann::json::parse(r.meta.empty() ? "{}" : r.meta);
        arr.push_back(j);
    }
    return arr.dump(2);
}

}  // namespace dunkl
