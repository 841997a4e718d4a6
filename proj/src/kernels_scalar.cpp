#include "modet/kernels.hpp"

namespace modet::kernels {

void squared_distances_scalar(const double* points, std::size_t n, std::size_t d,
                              const double* centroid, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double* p = points + i * d;
        double acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = p[j] - centroid[j];
            acc += diff * diff;
        }
        out[i] = acc;
    }
}

}  // namespace modet::kernels
