#pragma once

#include <optional>
#include <string>

namespace dunkl {

/// Point of the closed Weyl chamber in polar coordinates.
struct PolarPoint {
    double r = 0.0;      // radius, >= 0
    double theta = 0.0;  // angle in [0, pi/n]
};

/// The dihedral root system I2(n) with its multiplicities and every derived
/// quantity the spectral formulas consume.  Odd n is reduced at construction
/// to the even parameterization (k1 = 0, p = n), so all downstream code has a
/// single code path.
struct DihedralSystem {
    int n = 0;            // polygon order, >= 3
    bool even = false;    // parity of n
    int p = 0;            // n/2 for even n, n for odd n
    double k0 = 0.0;      // multiplicity on the first orbit
    double k1 = 0.0;      // multiplicity on the second orbit (0 for odd n)
    double gamma = 0.0;   // p * (k0 + k1)
    double l0 = 0.0;      // k0 - 1/2
    double l1 = 0.0;      // k1 - 1/2
    int group_order = 0;  // |W| = 2n
    double chamber_angle = 0.0;  // pi / n

    bool in_chamber(const PolarPoint& x, double slack = 0.0) const {
        return x.r >= 0.0 && x.theta >= -slack && x.theta <= chamber_angle + slack;
    }
};

/// Builds the canonical system.  k1 must be supplied iff n is even.
DihedralSystem make_system(int n, double k0, std::optional<double> k1 = std::nullopt);

/// Polar weight function w_k(r, theta), with the overall constant fixed to 1:
///   r^gamma * sin(p theta)^k0 * cos(p theta)^k1.
/// Boundary points give 0 whenever the corresponding multiplicity is positive.
double weight(const DihedralSystem& sys, const PolarPoint& x);

/// JSON descriptor {"n": int, "k0": float, "k1": float?} used by the CLI and
/// by config files.
DihedralSystem system_from_json(const std::string& text);
std::string system_to_json(const DihedralSystem& sys);

}  // namespace dunkl
