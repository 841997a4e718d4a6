#pragma once

#include <cstdint>
#include <vector>

#include "modet/types.hpp"

namespace modet {

// Per-dimension z-scored copy of a corpus's features. Constant dimensions
// keep std 1 so their column is all zeros.
struct StandardizedMatrix {
    std::vector<std::vector<double>> rows;
    std::vector<double> means;
    std::vector<double> stds;  // population std, 0 replaced by 1
};

StandardizedMatrix standardize(const ArtistCorpus& corpus);

struct Clustering {
    std::uint32_t k = 0;
    std::vector<std::uint32_t> assignment;      // point index -> cluster in [0, k)
    std::vector<std::vector<double>> centroids;
    double wcss = 0.0;
    std::vector<std::uint32_t> cluster_sizes;
};

// Best-of-restarts Lloyd iteration with k-means++ seeding. Deterministic for
// fixed inputs and seed; the result never contains an empty cluster, and the
// partition does not depend on input point order.
// restart_traces, when given, receives the per-iteration objective of every
// restart (restart_traces[r][iter]).
Clustering kmeans(const std::vector<std::vector<double>>& points, std::uint32_t k,
                  std::uint64_t seed, std::uint32_t restarts = 50,
                  std::uint32_t max_iters = 300, double tol = 1e-8,
                  std::vector<std::vector<double>>* restart_traces = nullptr);

// Recomputes the objective sum independently of clustering.wcss.
double wcss(const std::vector<std::vector<double>>& points, const Clustering& clustering);

// Mean silhouette coefficient of a clustering (k >= 2, no empty cluster).
double mean_silhouette(const std::vector<std::vector<double>>& points,
                       const Clustering& clustering);

// k in [k_min, k_max] maximizing mean silhouette, ties toward smaller k.
// Fewer than 3 points or all points identical returns 1.
std::uint32_t select_k(const std::vector<std::vector<double>>& points,
                       std::uint32_t k_min, std::uint32_t k_max, std::uint64_t seed);

}  // namespace modet
