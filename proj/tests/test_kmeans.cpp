#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "modet/kmeans.hpp"
#include "modet/rng.hpp"
#include "oracles.hpp"

using namespace modet;

namespace {

ArtistCorpus corpus_of(std::vector<std::vector<double>> features) {
    ArtistCorpus c;
    c.artist_id = "a";
    for (std::size_t i = 0; i < features.size(); ++i) {
        Recording r;
        r.id = "t" + std::to_string(i);
        r.artist_id = "a";
        r.title = r.id;
        r.features.values = std::move(features[i]);
        c.recordings.push_back(std::move(r));
    }
    return c;
}

// Partition as a set of sets of point indices, label-independent.
std::set<std::set<std::size_t>> partition_of(const Clustering& c) {
    std::vector<std::set<std::size_t>> groups(c.k);
    for (std::size_t i = 0; i < c.assignment.size(); ++i) groups[c.assignment[i]].insert(i);
    return {groups.begin(), groups.end()};
}

}  // namespace

TEST_CASE("standardize z-scores per dimension") {
    auto m = standardize(corpus_of({{0, 0}, {2, 0}}));
    CHECK(m.rows[0] == std::vector<double>{-1, 0});
    CHECK(m.rows[1] == std::vector<double>{1, 0});
    CHECK(m.means == std::vector<double>{1, 0});
    CHECK(m.stds == std::vector<double>{1, 1});  // constant dim gets std 1
}

TEST_CASE("standardize degenerate corpora") {
    auto single = standardize(corpus_of({{5, -3}}));
    CHECK(single.rows[0] == std::vector<double>{0, 0});
    auto constant = standardize(corpus_of({{5, -3}, {5, -3}, {5, -3}}));
    for (const auto& row : constant.rows) CHECK(row == std::vector<double>{0, 0});
}

TEST_CASE("standardize output has mean 0 and std 1") {
    auto corpus = corpus_of({{120, -7}, {95, -12}, {140, -4}, {101, -9}, {88, -15}});
    auto m = standardize(corpus);
    for (std::size_t j = 0; j < 2; ++j) {
        double mean = 0.0, var = 0.0;
        for (const auto& row : m.rows) mean += row[j];
        mean /= m.rows.size();
        for (const auto& row : m.rows) var += (row[j] - mean) * (row[j] - mean);
        var /= m.rows.size();
        CHECK(mean == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(var == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("kmeans finds the known two-cluster optimum") {
    const std::vector<std::vector<double>> pts = {{0, 0}, {0.5, 0}, {10, 0}, {10.5, 0}};
    auto c = kmeans(pts, 2, 42);
    CHECK(c.wcss == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(c.assignment[0] == c.assignment[1]);
    CHECK(c.assignment[2] == c.assignment[3]);
    CHECK(c.assignment[0] != c.assignment[2]);
    std::set<std::vector<double>> centroids(c.centroids.begin(), c.centroids.end());
    CHECK(centroids == std::set<std::vector<double>>{{0.25, 0}, {10.25, 0}});
    CHECK(wcss(pts, c) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("kmeans degenerate k values") {
    const std::vector<std::vector<double>> pts = {{0, 0}, {2, 0}, {5, 1}};
    SUBCASE("k equals point count") {
        auto c = kmeans(pts, 3, 1);
        CHECK(c.wcss == 0.0);
        std::set<std::uint32_t> clusters(c.assignment.begin(), c.assignment.end());
        CHECK(clusters.size() == 3);
    }
    SUBCASE("k of one yields the mean") {
        auto c = kmeans({{0, 0}, {2, 0}}, 1, 1);
        CHECK(c.centroids[0] == std::vector<double>{1, 0});
        CHECK(c.wcss == doctest::Approx(2.0));
    }
    SUBCASE("invalid k") {
        CHECK_THROWS_AS(kmeans(pts, 0, 1), std::invalid_argument);
        CHECK_THROWS_AS(kmeans(pts, 4, 1), std::invalid_argument);
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(kmeans({{0, 0}, {1}}, 1, 1), std::invalid_argument);
    }
}

TEST_CASE("clustering invariants hold on random instances") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        detail::SplitMix64 rng(seed, 99);
        const std::size_t n = 4 + rng.next() % 9;
        const std::uint32_t k = 2 + rng.next() % 2;
        std::vector<std::vector<double>> pts(n, std::vector<double>(2));
        for (auto& p : pts)
            for (auto& v : p) v = rng.uniform() * 10.0;

        auto c = kmeans(pts, k, seed);
        std::uint32_t total = 0;
        for (auto s : c.cluster_sizes) {
            CHECK(s > 0);
            total += s;
        }
        CHECK(total == n);
        // Centroids are the means of their members.
        for (std::uint32_t cl = 0; cl < k; ++cl) {
            std::vector<double> mean(2, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                if (c.assignment[i] != cl) continue;
                for (std::size_t j = 0; j < 2; ++j) mean[j] += pts[i][j];
            }
            for (auto& v : mean) v /= c.cluster_sizes[cl];
            for (std::size_t j = 0; j < 2; ++j) {
                CHECK(c.centroids[cl][j] == doctest::Approx(mean[j]).epsilon(1e-9));
            }
        }
        // Every point sits with one of its nearest centroids.
        for (std::size_t i = 0; i < n; ++i) {
            double assigned = 0.0, nearest = 1e300;
            for (std::uint32_t cl = 0; cl < k; ++cl) {
                double d2 = 0.0;
                for (std::size_t j = 0; j < 2; ++j) {
                    const double diff = pts[i][j] - c.centroids[cl][j];
                    d2 += diff * diff;
                }
                if (cl == c.assignment[i]) assigned = d2;
                nearest = std::min(nearest, d2);
            }
            CHECK(assigned <= nearest + 1e-12);
        }
    }
}

TEST_CASE("kmeans is deterministic and order-invariant") {
    detail::SplitMix64 rng(7, 0);
    std::vector<std::vector<double>> pts(12, std::vector<double>(2));
    for (auto& p : pts)
        for (auto& v : p) v = rng.uniform() * 5.0;

    auto a = kmeans(pts, 3, 123);
    auto b = kmeans(pts, 3, 123);
    CHECK(a.assignment == b.assignment);
    CHECK(a.centroids == b.centroids);
    CHECK(a.wcss == b.wcss);

    // Reversed input: same partition as index sets after un-permuting.
    std::vector<std::vector<double>> reversed(pts.rbegin(), pts.rend());
    auto c = kmeans(reversed, 3, 123);
    std::vector<std::uint32_t> unshuffled(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        unshuffled[i] = c.assignment[pts.size() - 1 - i];
    }
    Clustering c_as_original = c;
    c_as_original.assignment = unshuffled;
    CHECK(partition_of(a) == partition_of(c_as_original));
}

TEST_CASE("wcss is non-increasing within each restart") {
    detail::SplitMix64 rng(11, 0);
    std::vector<std::vector<double>> pts(30, std::vector<double>(2));
    for (auto& p : pts)
        for (auto& v : p) v = rng.uniform() * 20.0;
    std::vector<std::vector<double>> traces;
    kmeans(pts, 3, 5, 10, 300, 1e-8, &traces);
    CHECK(traces.size() == 10);
    for (const auto& trace : traces) {
        for (std::size_t i = 1; i < trace.size(); ++i) {
            CHECK(trace[i] <= trace[i - 1] + 1e-12);
        }
    }
}

TEST_CASE("best-of-restarts reaches the exhaustive optimum at desk scale") {
    // The acceptance suite runs the full 200 instances; keep a smoke sample here.
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        detail::SplitMix64 rng(seed, 1);
        const std::uint32_t k = 1 + rng.next() % 3;
        const std::size_t n = k + rng.next() % (11 - k);
        const std::size_t d = 1 + rng.next() % 2;
        std::vector<std::vector<double>> pts(n, std::vector<double>(d));
        for (auto& p : pts)
            for (auto& v : p) v = rng.uniform() * 10.0;
        auto c = kmeans(pts, k, seed, 50);
        CHECK(c.wcss <= oracles::exhaustive_wcss_optimum(pts, k) + 1e-9);
    }
}

TEST_CASE("standardize then cluster is invariant to per-dimension rescaling") {
    detail::SplitMix64 rng(3, 0);
    std::vector<std::vector<double>> features(15, std::vector<double>(2));
    for (auto& p : features)
        for (auto& v : p) v = rng.uniform() * 100.0;
    auto corpus = corpus_of(features);
    std::vector<std::vector<double>> scaled = features;
    for (auto& p : scaled) {
        p[0] *= 12.5;
        p[1] *= 0.003;
    }
    auto a = kmeans(standardize(corpus).rows, 3, 9);
    auto b = kmeans(standardize(corpus_of(scaled)).rows, 3, 9);
    CHECK(partition_of(a) == partition_of(b));
}

TEST_CASE("select_k picks two for two well-separated blobs") {
    detail::SplitMix64 rng(17, 0);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 20; ++i) {
        pts.push_back({rng.uniform(), rng.uniform()});
    }
    for (int i = 0; i < 20; ++i) {
        pts.push_back({10.0 + rng.uniform(), 10.0 + rng.uniform()});
    }
    const auto k = select_k(pts, 2, 5, 1);
    CHECK(k == 2);
    // Cross-check the winning silhouette against the brute-force oracle.
    auto c = kmeans(pts, k, 1);
    CHECK(mean_silhouette(pts, c) ==
          doctest::Approx(oracles::silhouette_bruteforce(pts, c.assignment, c.k)).epsilon(1e-12));
}

TEST_CASE("select_k guard paths") {
    CHECK(select_k({{0, 0}, {1, 1}}, 2, 3, 1) == 1);
    CHECK(select_k({{2, 2}, {2, 2}, {2, 2}, {2, 2}}, 2, 3, 1) == 1);
    CHECK_THROWS_AS(select_k({{0, 0}, {1, 0}, {2, 0}}, 2, 5, 1), std::invalid_argument);
}
