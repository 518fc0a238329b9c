#pragma once

#include <functional>
#include <vector>

namespace dunkl {

struct KsResult {
    double statistic = 0.0;
    double p_value = 0.0;
};

struct Chi2Result {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 0.0;
};

/// Kolmogorov tail function Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} e^{-2 k^2 lambda^2}.
double kolmogorov_q(double lambda);

/// One-sample Kolmogorov-Smirnov test against a continuous CDF.
KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov test.
KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b);

/// Chi-square goodness-of-fit p-value from observed counts and expected
/// masses (scaled to the sample size internally); cells with expected count
/// below min_expected are merged into their predecessor before forming the
/// statistic, and the degrees of freedom follow the merged cell count.
Chi2Result chi2_test(const std::vector<double>& observed, const std::vector<double>& expected,
                     double min_expected = 10.0);

/// Upper-tail p-value of a chi-square statistic.
double chi2_pvalue(double stat, int dof);

}  // namespace dunkl
