#include "modet/kernels.hpp"

namespace modet::kernels {

namespace {

using Kernel = void (*)(const double*, std::size_t, std::size_t, const double*, double*);

Kernel pick_kernel() {
#if defined(__x86_64__)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return squared_distances_avx2;
    }
#endif
    return squared_distances_scalar;
}

const Kernel active = pick_kernel();

}  // namespace

void squared_distances(const double* points, std::size_t n, std::size_t d,
                       const double* centroid, double* out) {
    active(points, n, d, centroid, out);
}

const char* active_variant() {
#if defined(__x86_64__)
    if (active == squared_distances_avx2) return "avx2";
#endif
    return "scalar";
}

}  // namespace modet::kernels
