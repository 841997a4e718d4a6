#if defined(__x86_64__)

#include <immintrin.h>

#include "modet/kernels.hpp"

namespace modet::kernels {

namespace {

// [x0,y0,x1,y1] layout, two points per vector. hadd keeps the x^2 + y^2
// summation order of the scalar kernel, so d == 2 results are bit-identical.
inline void distances_d2(const double* points, std::size_t n, const double* centroid,
                         double* out) {
    const __m256d c = _mm256_set_pd(centroid[1], centroid[0], centroid[1], centroid[0]);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d p = _mm256_loadu_pd(points + 2 * i);
        const __m256d diff = _mm256_sub_pd(p, c);
        const __m256d sq = _mm256_mul_pd(diff, diff);
        const __m256d sums = _mm256_hadd_pd(sq, sq);  // [s0,s0,s1,s1]
        out[i] = _mm256_cvtsd_f64(sums);
        out[i + 1] = _mm_cvtsd_f64(_mm256_extractf128_pd(sums, 1));
    }
    if (i < n) {
        const double dx = points[2 * i] - centroid[0];
        const double dy = points[2 * i + 1] - centroid[1];
        out[i] = dx * dx + dy * dy;
    }
}

}  // namespace

void squared_distances_avx2(const double* points, std::size_t n, std::size_t d,
                            const double* centroid, double* out) {
    if (d == 2) {
        distances_d2(points, n, centroid, out);
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double* p = points + i * d;
        __m256d acc = _mm256_setzero_pd();
        std::size_t j = 0;
        for (; j + 4 <= d; j += 4) {
            const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(p + j), _mm256_loadu_pd(centroid + j));
            acc = _mm256_fmadd_pd(diff, diff, acc);
        }
        const __m128d lo = _mm256_castpd256_pd128(acc);
        const __m128d hi = _mm256_extractf128_pd(acc, 1);
        const __m128d pair = _mm_add_pd(lo, hi);
        double total = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
        for (; j < d; ++j) {
            const double diff = p[j] - centroid[j];
            total += diff * diff;
        }
        out[i] = total;
    }
}

}  // namespace modet::kernels

#endif  // __x86_64__
