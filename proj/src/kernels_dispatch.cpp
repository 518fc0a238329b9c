#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "dunkl/kernels.hpp"

namespace dunkl {

const KernelOps* kernels_avx2_impl();  // defined in kernels_avx2.cpp

const KernelOps* kernels_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return kernels_avx2_impl();
#endif
    return nullptr;
}

namespace {

const KernelOps& select() {
    if (const char* env = std::getenv("DUNKL_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return kernels_scalar();
        if (std::strcmp(env, "avx2") == 0) {
            const KernelOps* ops = kernels_avx2();
            if (!ops) throw std::runtime_error("DUNKL_SIMD=avx2 requested but AVX2 unavailable");
            return *ops;
        }
    }
    const KernelOps* ops = kernels_avx2();
    return ops ? *ops : kernels_scalar();
}

}  // namespace

const KernelOps& kernels() {
    static const KernelOps& chosen = select();
    return chosen;
}

}  // namespace dunkl
