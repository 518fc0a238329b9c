#include "dunkl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dunkl/specfun.hpp"

namespace dunkl {

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-16) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double ks_pvalue(double d, double n_eff) {
    const double s = std::sqrt(n_eff);
    return kolmogorov_q((s + 0.12 + 0.11 / s) * d);
}

}  // namespace

KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_test: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::abs(f - i / n));
        d = std::max(d, std::abs((i + 1) / n - f));
    }
    return {d, ks_pvalue(d, n)};
}

KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_test_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double xa = a[i], xb = b[j];
        if (xa <= xb) ++i;
        if (xb <= xa) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    const double n_eff = na * nb / (na + nb);
    return {d, ks_pvalue(d, n_eff)};
}

double chi2_pvalue(double stat, int dof) {
    if (dof <= 0) throw std::invalid_argument("chi2_pvalue: dof must be positive");
    return gammainc_q(0.5 * dof, 0.5 * stat);
}

Chi2Result chi2_test(const std::vector<double>& observed, const std::vector<double>& expected,
                     double min_expected) {
    if (observed.size() != expected.size() || observed.empty())
        throw std::invalid_argument("chi2_test: size mismatch");
    double n_obs = 0.0, mass = 0.0;
    for (double o : observed) n_obs += o;
    for (double e : expected) mass += e;
    // Merge low-expectation cells left to right so the approximation holds.
    std::vector<double> obs_m, exp_m;
    double co = 0.0, ce = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        co += observed[i];
        ce += expected[i] * n_obs / mass;
        if (ce >= min_expected) {
            obs_m.push_back(co);
            exp_m.push_back(ce);
            co = ce = 0.0;
        }
    }
    if (ce > 0.0) {
        if (!exp_m.empty()) {
            obs_m.back() += co;
            exp_m.back() += ce;
        } else {
            obs_m.push_back(co);
            exp_m.push_back(ce);
        }
    }
    Chi2Result res;
    for (std::size_t i = 0; i < obs_m.size(); ++i) {
        const double diff = obs_m[i] - exp_m[i];
        res.statistic += diff * diff / exp_m[i];
    }
    res.dof = static_cast<int>(obs_m.size()) - 1;
    res.p_value = res.dof > 0 ? chi2_pvalue(res.statistic, res.dof) : 1.0;
    return res;
}

}  // namespace dunkl
