#include "dunkl/dihedral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace dunkl {

DihedralSystem make_system(int n, double k0, std::optional<double> k1) {
    if (n < 3) throw std::domain_error("make_system: need n >= 3");
    if (k0 < 0.0) throw std::domain_error("make_system: k0 must be >= 0");
    const bool even = (n % 2 == 0);
    if (!even && k1.has_value())
        throw std::invalid_argument("make_system: odd n has a single orbit, k1 must not be given");
    if (even && !k1.has_value())
        throw std::invalid_argument("make_system: even n has two orbits, k1 is required");
    if (even && *k1 < 0.0) throw std::domain_error("make_system: k1 must be >= 0");

    DihedralSystem sys;
    sys.n = n;
    sys.even = even;
    // Odd systems reduce to (k1 = 0, k0 = k, p = n); then gamma = n k as required.
    sys.p = even ? n / 2 : n;
    sys.k0 = k0;
    sys.k1 = even ? *k1 : 0.0;
    sys.gamma = sys.p * (sys.k0 + sys.k1);
    sys.l0 = sys.k0 - 0.5;
    sys.l1 = sys.k1 - 0.5;
    sys.group_order = 2 * n;
    sys.chamber_angle = std::numbers::pi / n;
    return sys;
}

double weight(const DihedralSystem& sys, const PolarPoint& x) {
    if (!sys.in_chamber(x, 1e-14))
        throw std::domain_error("weight: point outside the closed chamber");
    const double s = std::sin(sys.p * x.theta);
    const double c = std::cos(sys.p * x.theta);
    double v = std::pow(x.r, sys.gamma);
    if (sys.k0 > 0.0) v *= std::pow(s, sys.k0);
    if (sys.k1 > 0.0) v *= std::pow(std::abs(c), sys.k1);
    return v;
}

DihedralSystem system_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const int n = j.at("n").get<int>();
    const double k0 = j.at("k0").get<double>();
    if (j.contains("k1") && !j["k1"].is_null())
        return make_system(n, k0, j["k1"].get<double>());
    return make_system(n, k0);
}

std::string system_to_json(const DihedralSystem& sys) {
    nlohmann::json j;
    j["n"] = sys.n;
    j["k0"] = sys.k0;
    if (sys.even) j["k1"] = sys.k1;
    return j.dump();
}

}  // namespace dunkl
