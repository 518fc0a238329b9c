#pragma once

#include <cstddef>
#include <vector>

namespace dunkl {

/// Orthonormal Jacobi recurrence table for fixed weight exponents (a, b):
///   p~_{j+1}(x) = (A[j] x + B[j]) p~_j(x) - C[j] p~_{j-1}(x),  p~_0 = p0,
/// with C[0] = 0.  The orthonormal form keeps the iteration well conditioned
/// to degree >= 200, which the raw P_j recurrence is not once the values or
/// norms overflow separately.
struct JacobiRecurrence {
    double a = 0.0;
    double b = 0.0;
    double p0 = 1.0;
    std::vector<double> A, B, C;  // size jmax: step j -> j+1

    int max_degree() const { return static_cast<int>(A.size()); }
};

JacobiRecurrence make_jacobi_recurrence(double a, double b, int jmax);

/// Data-parallel inner loops, dispatched at runtime.  Every entry has a
/// scalar reference implementation; SIMD variants are equivalence-tested
/// against it.
struct KernelOps {
    const char* name;

    /// out[i] = sum_{j < nc} coeff[j] * p~_j(x[i])
    void (*jacobi_series)(const JacobiRecurrence& rec, const double* coeff, int nc,
                          const double* x, double* out, std::size_t n);

    /// moments[j] = sum_i w[i] * p~_j(x[i]) for j < nm
    void (*jacobi_moments)(const JacobiRecurrence& rec, int nm, const double* x, const double* w,
                           std::size_t n, double* moments);

    /// out[i] = exp(x[i])
    void (*exp_batch)(const double* x, double* out, std::size_t n);
};

/// Active kernel set.  Selection happens once: AVX2+FMA when the CPU and the
/// build support them, otherwise scalar.  DUNKL_SIMD=scalar|avx2 overrides.
const KernelOps& kernels();

const KernelOps& kernels_scalar();
/// nullptr when the binary or the CPU lacks AVX2.
const KernelOps* kernels_avx2();

}  // namespace dunkl
