#include "modet/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "modet/kernels.hpp"
#include "modet/rng.hpp"

namespace modet {

namespace {

using detail::SplitMix64;

// Indices sorted lexicographically by coordinates so restart initialization
// and centroid accumulation cannot depend on input order.
std::vector<std::size_t> canonical_order(const std::vector<std::vector<double>>& points) {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return points[a] < points[b];
    });
    return order;
}

struct Flat {
    std::vector<double> data;  // row-major, canonical order
    std::size_t n = 0, d = 0;

    const double* row(std::size_t i) const { return data.data() + i * d; }
};

Flat flatten(const std::vector<std::vector<double>>& points,
             const std::vector<std::size_t>& order) {
    Flat f;
    f.n = points.size();
    f.d = f.n ? points[0].size() : 0;
    f.data.resize(f.n * f.d);
    for (std::size_t i = 0; i < f.n; ++i) {
        std::copy(points[order[i]].begin(), points[order[i]].end(), f.data.begin() + i * f.d);
    }
    return f;
}

// k-means++ over the canonical point layout.
std::vector<std::vector<double>> seed_centroids(const Flat& pts, std::uint32_t k,
                                                SplitMix64& rng) {
    std::vector<std::vector<double>> centroids;
    centroids.reserve(k);
    std::vector<double> best_d2(pts.n, std::numeric_limits<double>::infinity());
    std::vector<double> d2(pts.n);

    std::size_t first = static_cast<std::size_t>(rng.uniform() * pts.n);
    if (first >= pts.n) first = pts.n - 1;
    centroids.emplace_back(pts.row(first), pts.row(first) + pts.d);

    while (centroids.size() < k) {
        kernels::squared_distances(pts.data.data(), pts.n, pts.d, centroids.back().data(), d2.data());
        for (std::size_t i = 0; i < pts.n; ++i) best_d2[i] = std::min(best_d2[i], d2[i]);
        double total = std::accumulate(best_d2.begin(), best_d2.end(), 0.0);
        std::size_t chosen = pts.n;
        if (total > 0.0) {
            double target = rng.uniform() * total;
            double cum = 0.0;
            for (std::size_t i = 0; i < pts.n; ++i) {
                cum += best_d2[i];
                if (target < cum) { chosen = i; break; }
            }
            if (chosen == pts.n) chosen = pts.n - 1;
        } else {
            // All points coincide with a centroid; take the first point not
            // already chosen so k distinct slots still exist.
            chosen = centroids.size() % pts.n;
        }
        centroids.emplace_back(pts.row(chosen), pts.row(chosen) + pts.d);
    }
    return centroids;
}

struct LloydResult {
    std::vector<std::uint32_t> assignment;  // over canonical order
    std::vector<std::vector<double>> centroids;
    double wcss = 0.0;
};

double assign_points(const Flat& pts, const std::vector<std::vector<double>>& centroids,
                     std::vector<std::uint32_t>& assignment, std::vector<double>& scratch,
                     std::vector<double>& best) {
    const std::size_t k = centroids.size();
    std::fill(best.begin(), best.end(), std::numeric_limits<double>::infinity());
    for (std::size_t c = 0; c < k; ++c) {
        kernels::squared_distances(pts.data.data(), pts.n, pts.d, centroids[c].data(), scratch.data());
        for (std::size_t i = 0; i < pts.n; ++i) {
            if (scratch[i] < best[i]) {  // strict: ties stay with lowest index
                best[i] = scratch[i];
                assignment[i] = static_cast<std::uint32_t>(c);
            }
        }
    }
    return std::accumulate(best.begin(), best.end(), 0.0);
}

// Move the farthest point of a multi-member cluster into each empty cluster.
void repair_empty(const Flat& pts, std::vector<std::uint32_t>& assignment,
                  std::vector<double>& best, std::vector<std::uint32_t>& sizes) {
    const std::uint32_t k = static_cast<std::uint32_t>(sizes.size());
    for (std::uint32_t c = 0; c < k; ++c) {
        while (sizes[c] == 0) {
            std::size_t far = pts.n;
            double far_d = -1.0;
            for (std::size_t i = 0; i < pts.n; ++i) {
                if (sizes[assignment[i]] > 1 && best[i] > far_d) {
                    far_d = best[i];
                    far = i;
                }
            }
            if (far == pts.n) break;  // fewer distinct points than k
            --sizes[assignment[far]];
            assignment[far] = c;
            ++sizes[c];
            best[far] = 0.0;
        }
    }
}

void update_centroids(const Flat& pts, const std::vector<std::uint32_t>& assignment,
                      const std::vector<std::uint32_t>& sizes,
                      std::vector<std::vector<double>>& centroids) {
    for (auto& c : centroids) std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t i = 0; i < pts.n; ++i) {
        auto& c = centroids[assignment[i]];
        const double* p = pts.row(i);
        for (std::size_t j = 0; j < pts.d; ++j) c[j] += p[j];
    }
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        for (auto& v : centroids[c]) v /= sizes[c];
    }
}

LloydResult lloyd(const Flat& pts, std::uint32_t k, SplitMix64& rng,
                  std::uint32_t max_iters, double tol, std::vector<double>* trace) {
    LloydResult res;
    res.centroids = seed_centroids(pts, k, rng);
    res.assignment.assign(pts.n, 0);

    std::vector<double> scratch(pts.n), best(pts.n);
    std::vector<std::uint32_t> prev;
    std::vector<std::uint32_t> sizes(k);
    double prev_wcss = std::numeric_limits<double>::infinity();

    for (std::uint32_t iter = 0; iter < max_iters; ++iter) {
        double obj = assign_points(pts, res.centroids, res.assignment, scratch, best);
        std::fill(sizes.begin(), sizes.end(), 0);
        for (auto a : res.assignment) ++sizes[a];
        repair_empty(pts, res.assignment, best, sizes);
        if (trace) trace->push_back(obj);

        if (res.assignment == prev) {
            // Centroids are already the means of this assignment.
            res.wcss = obj;
            return res;
        }
        update_centroids(pts, res.assignment, sizes, res.centroids);
        const bool converged =
            std::isfinite(prev_wcss) && prev_wcss - obj < tol * std::max(prev_wcss, 1.0);
        prev = res.assignment;
        prev_wcss = obj;
        if (converged) break;
    }
    // Final pass against the last centroid update so the returned state is
    // self-consistent.
    res.wcss = assign_points(pts, res.centroids, res.assignment, scratch, best);
    std::fill(sizes.begin(), sizes.end(), 0);
    for (auto a : res.assignment) ++sizes[a];
    repair_empty(pts, res.assignment, best, sizes);
    update_centroids(pts, res.assignment, sizes, res.centroids);
    res.wcss = 0.0;
    for (std::size_t i = 0; i < pts.n; ++i) {
        const auto& c = res.centroids[res.assignment[i]];
        const double* p = pts.row(i);
        for (std::size_t j = 0; j < pts.d; ++j) {
            const double diff = p[j] - c[j];
            res.wcss += diff * diff;
        }
    }
    return res;
}

}  // namespace

StandardizedMatrix standardize(const ArtistCorpus& corpus) {
    const std::size_t n = corpus.recordings.size();
    const std::size_t d = n ? corpus.recordings[0].features.dimension() : 0;
    StandardizedMatrix m;
    m.means.assign(d, 0.0);
    m.stds.assign(d, 1.0);
    for (const auto& r : corpus.recordings) {
        for (std::size_t j = 0; j < d; ++j) m.means[j] += r.features.values[j];
    }
    for (auto& v : m.means) v /= static_cast<double>(n);
    std::vector<double> var(d, 0.0);
    for (const auto& r : corpus.recordings) {
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = r.features.values[j] - m.means[j];
            var[j] += diff * diff;
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        const double s = std::sqrt(var[j] / static_cast<double>(n));
        m.stds[j] = s > 0.0 ? s : 1.0;
    }
    m.rows.reserve(n);
    for (const auto& r : corpus.recordings) {
        std::vector<double> row(d);
        for (std::size_t j = 0; j < d; ++j) {
            row[j] = (r.features.values[j] - m.means[j]) / m.stds[j];
        }
        m.rows.push_back(std::move(row));
    }
    return m;
}

Clustering kmeans(const std::vector<std::vector<double>>& points, std::uint32_t k,
                  std::uint64_t seed, std::uint32_t restarts, std::uint32_t max_iters,
                  double tol, std::vector<std::vector<double>>* restart_traces) {
    const std::size_t n = points.size();
    if (k == 0 || k > n) throw std::invalid_argument("kmeans: k out of range");
    const std::size_t d = points[0].size();
    for (const auto& p : points) {
        if (p.size() != d) throw std::invalid_argument("kmeans: dimension mismatch");
    }

    const auto order = canonical_order(points);
    const Flat pts = flatten(points, order);

    LloydResult best;
    best.wcss = std::numeric_limits<double>::infinity();
    for (std::uint32_t r = 0; r < restarts; ++r) {
        SplitMix64 rng(seed, r);
        std::vector<double>* trace = nullptr;
        if (restart_traces) trace = &restart_traces->emplace_back();
        LloydResult res = lloyd(pts, k, rng, max_iters, tol, trace);
        if (res.wcss < best.wcss) best = std::move(res);
    }

    Clustering out;
    out.k = k;
    out.assignment.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) out.assignment[order[i]] = best.assignment[i];
    out.centroids = std::move(best.centroids);
    out.wcss = best.wcss;
    out.cluster_sizes.assign(k, 0);
    for (auto a : out.assignment) ++out.cluster_sizes[a];
    return out;
}

double wcss(const std::vector<std::vector<double>>& points, const Clustering& clustering) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& c = clustering.centroids[clustering.assignment[i]];
        for (std::size_t j = 0; j < points[i].size(); ++j) {
            const double diff = points[i][j] - c[j];
            total += diff * diff;
        }
    }
    return total;
}

double mean_silhouette(const std::vector<std::vector<double>>& points,
                       const Clustering& clustering) {
    const std::size_t n = points.size();
    const std::uint32_t k = clustering.k;
    double total = 0.0;
    std::vector<double> mean_to_cluster(k);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> sum(k, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double d2 = 0.0;
            for (std::size_t t = 0; t < points[i].size(); ++t) {
                const double diff = points[i][t] - points[j][t];
                d2 += diff * diff;
            }
            sum[clustering.assignment[j]] += std::sqrt(d2);
        }
        const std::uint32_t own = clustering.assignment[i];
        const std::uint32_t own_size = clustering.cluster_sizes[own];
        double s = 0.0;
        if (own_size > 1) {
            const double a = sum[own] / (own_size - 1);
            double b = std::numeric_limits<double>::infinity();
            for (std::uint32_t c = 0; c < k; ++c) {
                if (c == own || clustering.cluster_sizes[c] == 0) continue;
                b = std::min(b, sum[c] / clustering.cluster_sizes[c]);
            }
            const double denom = std::max(a, b);
            if (denom > 0.0) s = (b - a) / denom;
        }
        total += s;
    }
    return total / static_cast<double>(n);
}

std::uint32_t select_k(const std::vector<std::vector<double>>& points, std::uint32_t k_min,
                       std::uint32_t k_max, std::uint64_t seed) {
    const std::size_t n = points.size();
    if (n < 3) return 1;
    bool all_same = true;
    for (const auto& p : points) {
        if (p != points[0]) { all_same = false; break; }
    }
    if (all_same) return 1;
    if (k_min < 2 || k_min > k_max || k_max > n - 1) {
        throw std::invalid_argument("select_k: invalid range");
    }

    std::uint32_t best_k = k_min;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::uint32_t k = k_min; k <= k_max; ++k) {
        Clustering c = kmeans(points, k, seed);
        const double score = mean_silhouette(points, c);
        if (score > best_score) {
            best_score = score;
            best_k = k;
        }
    }
    return best_k;
}

}  // namespace modet
