#include "dunkl/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace dunkl {

namespace {

QuadRule make_gauss_legendre(int n) {
    QuadRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        rule.x[i] = -z;
        rule.x[n - 1 - i] = z;
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.w[i] = w;
        rule.w[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace

const QuadRule& gauss_legendre(int n) {
    static std::map<int, QuadRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
    return it->second;
}

QuadRule gauss_jacobi(int n, double a, double b) {
    if (a <= -1.0 || b <= -1.0)
        throw std::domain_error("gauss_jacobi: weight exponents must be > -1");
    // Golub-Welsch on the symmetric tridiagonal of monic Jacobi recurrence
    // coefficients alpha_k (diagonal) and beta_k (off-diagonal squares).
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    const double ab = a + b;
    for (int k = 0; k < n; ++k) {
        double alpha;
        if (k == 0) {
            alpha = (b - a) / (ab + 2.0);
        } else {
            const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
            alpha = (b * b - a * a) / den;
        }
        J(k, k) = alpha;
        if (k + 1 < n) {
            double beta;
            if (k == 0) {
                beta = 4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
            } else {
                const double kk = k + 1.0;  // beta_{k+1} in standard indexing
                const double num = 4.0 * kk * (kk + a) * (kk + b) * (kk + ab);
                const double den = (2.0 * kk + ab) * (2.0 * kk + ab) * (2.0 * kk + ab + 1.0) *
                                   (2.0 * kk + ab - 1.0);
                beta = num / den;
            }
            J(k, k + 1) = J(k + 1, k) = std::sqrt(beta);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    const double mu0 = std::exp((ab + 1.0) * std::numbers::ln2 + std::lgamma(a + 1.0) +
                                std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
    QuadRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.x[i] = es.eigenvalues()(i);
        const double v = es.eigenvectors()(0, i);
        rule.w[i] = mu0 * v * v;
    }
    return rule;
}

double integrate_gl(const std::function<double(double)>& f, double lo, double hi, int order) {
    const QuadRule& rule = gauss_legendre(order);
    const double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) sum += rule.w[i] * f(c + h * rule.x[i]);
    return h * sum;
}

namespace {

double adapt_panel(const std::function<double(double)>& f, double lo, double hi, double coarse,
                   double abs_tol, double rel_tol, int depth) {
    const double fine =
        integrate_gl(f, lo, 0.5 * (lo + hi), 16) + integrate_gl(f, 0.5 * (lo + hi), hi, 16);
    const double err = std::abs(fine - coarse);
    if (depth <= 0 || err <= abs_tol || err <= rel_tol * std::abs(fine)) return fine;
    const double mid = 0.5 * (lo + hi);
    return adapt_panel(f, lo, mid, integrate_gl(f, lo, mid, 16), 0.5 * abs_tol, rel_tol,
                       depth - 1) +
           adapt_panel(f, mid, hi, integrate_gl(f, mid, hi, 16), 0.5 * abs_tol, rel_tol,
                       depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double abs_tol, double rel_tol, int max_depth) {
    if (lo == hi) return 0.0;
    return adapt_panel(f, lo, hi, integrate_gl(f, lo, hi, 16), abs_tol, rel_tol, max_depth);
}

double integrate2d(const std::function<double(double, double)>& f, double xlo, double xhi,
                   double ylo, double yhi, double abs_tol) {
    const double inner_tol = abs_tol / (8.0 * std::max(1.0, xhi - xlo));
    auto outer = [&](double x) {
        return integrate_adaptive([&](double y) { return f(x, y); }, ylo, yhi, inner_tol);
    };
    return integrate_adaptive(outer, xlo, xhi, abs_tol * 0.5);
}

}  // namespace dunkl
