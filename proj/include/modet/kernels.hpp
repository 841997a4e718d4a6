#pragma once

#include <cstddef>

// Distance kernels for the clustering inner loop. A scalar reference
// implementation always exists; on x86-64 an AVX2 variant is selected at
// runtime when the CPU supports it. Both variants keep the same summation
// order for d == 2, so results are bit-identical regardless of dispatch.

namespace modet::kernels {

// Squared Euclidean distances from n row-major points of dimension d to one
// centroid. out[i] = ||points[i*d..] - centroid||^2.
void squared_distances(const double* points, std::size_t n, std::size_t d,
                       const double* centroid, double* out);

void squared_distances_scalar(const double* points, std::size_t n, std::size_t d,
                              const double* centroid, double* out);
#if defined(__x86_64__)
void squared_distances_avx2(const double* points, std::size_t n, std::size_t d,
                            const double* centroid, double* out);
#endif

// Name of the active variant ("scalar" or "avx2").
const char* active_variant();

}  // namespace modet::kernels
