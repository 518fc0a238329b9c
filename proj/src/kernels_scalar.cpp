#include <cmath>
#include <stdexcept>

#include "dunkl/kernels.hpp"

namespace dunkl {

JacobiRecurrence make_jacobi_recurrence(double a, double b, int jmax) {
    if (a <= -1.0 || b <= -1.0)
        throw std::domain_error("make_jacobi_recurrence: parameters must exceed -1");
    JacobiRecurrence rec;
    rec.a = a;
    rec.b = b;
    const double ab = a + b;
    const double mu0 = std::exp((ab + 1.0) * M_LN2 + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                                std::lgamma(ab + 2.0));
    rec.p0 = 1.0 / std::sqrt(mu0);
    rec.A.resize(jmax);
    rec.B.resize(jmax);
    rec.C.resize(jmax);
    // Monic recurrence pi_{k+1} = (x - alpha_k) pi_k - beta_k pi_{k-1};
    // orthonormal form divides through by sqrt(beta_{k+1}).
    auto alpha = [&](int k) {
        if (k == 0) return (b - a) / (ab + 2.0);
        return (b * b - a * a) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0));
    };
    auto beta = [&](int k) {  // k >= 1
        if (k == 1) return 4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
        const double kk = k;
        return 4.0 * kk * (kk + a) * (kk + b) * (kk + ab) /
               ((2.0 * kk + ab) * (2.0 * kk + ab) * (2.0 * kk + ab + 1.0) * (2.0 * kk + ab - 1.0));
    };
    double sb_prev = 0.0;
    for (int j = 0; j < jmax; ++j) {
        const double sb_next = std::sqrt(beta(j + 1));
        rec.A[j] = 1.0 / sb_next;
        rec.B[j] = -alpha(j) / sb_next;
        rec.C[j] = sb_prev / sb_next;
        sb_prev = sb_next;
    }
    return rec;
}

namespace scalar_kernels {

void jacobi_series(const JacobiRecurrence& rec, const double* coeff, int nc, const double* x,
                   double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        double pm1 = 0.0, pc = rec.p0;
        double acc = coeff[0] * pc;
        for (int j = 1; j < nc; ++j) {
            const double pn = (rec.A[j - 1] * xi + rec.B[j - 1]) * pc - rec.C[j - 1] * pm1;
            pm1 = pc;
            pc = pn;
            acc += coeff[j] * pc;
        }
        out[i] = acc;
    }
}

void jacobi_moments(const JacobiRecurrence& rec, int nm, const double* x, const double* w,
                    std::size_t n, double* moments) {
    for (int j = 0; j < nm; ++j) moments[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i], wi = w[i];
        double pm1 = 0.0, pc = rec.p0;
        moments[0] += wi * pc;
        for (int j = 1; j < nm; ++j) {
            const double pn = (rec.A[j - 1] * xi + rec.B[j - 1]) * pc - rec.C[j - 1] * pm1;
            pm1 = pc;
            pc = pn;
            moments[j] += wi * pc;
        }
    }
}

void exp_batch(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(x[i]);
}

}  // namespace scalar_kernels

const KernelOps& kernels_scalar() {
    static const KernelOps ops{"scalar", &scalar_kernels::jacobi_series,
                               &scalar_kernels::jacobi_moments, &scalar_kernels::exp_batch};
    return ops;
}

}  // namespace dunkl
