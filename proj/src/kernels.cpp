#include "qtoeplitz/kernels.hpp"

namespace qtoeplitz {

namespace {

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

}  // namespace

KernelFn select_kernel() {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_available()) {
        return &eval_points_avx2;
    }
#endif
    return &eval_points_scalar;
}

std::string active_kernel_name() {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_available()) {
        return "avx2";
    }
#endif
    return "scalar";
}

}  // namespace qtoeplitz
