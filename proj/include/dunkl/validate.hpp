#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dunkl/common.hpp"
#include "dunkl/dihedral.hpp"
#include "dunkl/simulate.hpp"

namespace dunkl {

struct ValidationReport {
    std::string check_name;
    double statistic = 0.0;
    double threshold = 0.0;
    bool passed = false;   // statistic within threshold
    std::string meta;      // JSON fragment with parameters / sample sizes
};

/// Max |series - image sum| for the k = 0 reflected kernel over random
/// chamber points.  The image-sum oracle touches only Gaussian kernels and
/// the 2n dihedral isometries.
ValidationReport check_images_reflected(const DihedralSystem& sys, double t, int n_points,
                                        std::uint64_t seed);

/// Same for the killed kernel with the signed (determinant-weighted) sum.
ValidationReport check_images_killed(const DihedralSystem& sys, double t, int n_points,
                                     std::uint64_t seed);

/// Chi-square of the 2-D histogram of simulated (r, theta) at t_snap against
/// the transition-density cell masses; 20 x 20 bins with radial quantile
/// edges, cells merged below an expected count of 10.
ValidationReport check_mc_density(const DihedralSystem& sys, const SimConfig& cfg, double t_snap);

/// Mehler identity residual over a fixed set of evaluation points.
ValidationReport check_mehler(const DihedralSystem& sys,
                              const std::vector<std::pair<PolarPoint, PolarPoint>>& points);

/// Oracle value: signed or plain dihedral image sum of planar Gaussian
/// kernels, written against dr dtheta (exposed so tests can call it directly).
double image_sum(const DihedralSystem& sys, double t, const PolarPoint& x, const PolarPoint& y,
                 bool signed_sum);

struct ValidateConfig {
    std::uint64_t seed = 20260801;
    int mc_paths = 30000;
    std::vector<std::string> checks;  // empty = all
};

std::vector<ValidationReport> run_all(const ValidateConfig& cfg);

std::string reports_to_json(const std::vector<ValidationReport>& reports);

}  // namespace dunkl
