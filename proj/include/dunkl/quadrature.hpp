#pragma once

#include <functional>
#include <vector>

namespace dunkl {

/// Nodes and weights of a quadrature rule on [-1, 1] (or on [0, 1] after
/// mapping; see helpers below).
struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};

/// Gauss-Legendre rule of order n on [-1, 1].  Rules are cached per order;
/// the cache fill is idempotent and safe under concurrent first use.
const QuadRule& gauss_legendre(int n);

/// Gauss-Jacobi rule of order n for the weight (1-x)^a (1+x)^b on [-1, 1],
/// computed by Golub-Welsch.  Not cached (callers hold on to it).
QuadRule gauss_jacobi(int n, double a, double b);

/// Integral of f over [lo, hi] with a fixed-order Gauss-Legendre rule.
double integrate_gl(const std::function<double(double)>& f, double lo, double hi, int order);

/// Adaptive panel-splitting Gauss-Legendre integration.  The error estimate
/// per panel is |GL(2m) - GL(m)|.
double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double abs_tol, double rel_tol = 0.0, int max_depth = 24);

/// Tensor-product adaptive integration over [xlo, xhi] x [ylo, yhi]:
/// the outer variable is adaptive, the inner integral uses integrate_adaptive
/// with a tightened tolerance.
double integrate2d(const std::function<double(double, double)>& f, double xlo, double xhi,
                   double ylo, double yhi, double abs_tol);

}  // namespace dunkl
