#include "modet/detect.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace modet {

const char* to_string(Predicted p) {
    switch (p) {
        case Predicted::Genuine: return "genuine";
        case Predicted::NotOutlier: return "not_outlier";
        case Predicted::NonGenuineOutlier: return "non_genuine_outlier";
    }
    return "not_outlier";
}

std::set<std::string> distinctiveness(const ArtistCorpus& corpus,
                                      const Clustering& clustering, std::uint32_t n_d) {
    std::set<std::string> out;
    for (std::size_t i = 0; i < corpus.recordings.size(); ++i) {
        if (clustering.cluster_sizes[clustering.assignment[i]] < n_d) {
            out.insert(corpus.recordings[i].id);
        }
    }
    return out;
}

double structure_ratio(const ArtistCorpus& corpus, const Recording& m) {
    if (!m.structure) {
        throw std::invalid_argument("structure_ratio: recording " + m.id + " has no annotation");
    }
    std::size_t matches = 0;
    for (const auto& r : corpus.recordings) {
        if (r.structure && *r.structure == *m.structure) ++matches;
    }
    return static_cast<double>(matches) / static_cast<double>(corpus.recordings.size());
}

NonAdherenceSets non_adherence(const ArtistCorpus& corpus, double c_g) {
    // Count each distinct sequence once instead of re-scanning per recording.
    std::map<std::vector<std::string>, std::size_t> freq;
    for (const auto& r : corpus.recordings) {
        if (r.structure) ++freq[r.structure->labels];
    }
    const double n = static_cast<double>(corpus.recordings.size());
    NonAdherenceSets out;
    for (const auto& r : corpus.recordings) {
        if (!r.structure) {
            out.unknown.insert(r.id);
        } else if (static_cast<double>(freq[r.structure->labels]) / n < c_g) {
            out.flagged.insert(r.id);
        }
    }
    return out;
}

namespace {

std::uint32_t main_cluster(const Clustering& clustering) {
    std::uint32_t best = 0;
    for (std::uint32_t c = 1; c < clustering.k; ++c) {
        if (clustering.cluster_sizes[c] > clustering.cluster_sizes[best]) best = c;
    }
    return best;
}

double distance_to(const std::vector<double>& a, const std::vector<double>& b) {
    double d2 = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        d2 += diff * diff;
    }
    return std::sqrt(d2);
}

}  // namespace

std::set<std::string> distance_prefilter(const ArtistCorpus& corpus,
                                         const Clustering& clustering,
                                         const StandardizedMatrix& std_matrix,
                                         double threshold) {
    const auto& center = clustering.centroids[main_cluster(clustering)];
    std::set<std::string> out;
    for (std::size_t i = 0; i < corpus.recordings.size(); ++i) {
        if (distance_to(std_matrix.rows[i], center) > threshold) {
            out.insert(corpus.recordings[i].id);
        }
    }
    return out;
}

OutlierCategory categorize_heuristic(const Recording& r, const DetectionConfig& config) {
    if (r.label) return *r.label;
    if (!r.features.values.empty()) {
        const double tempo = r.features.values[0];
        if (!std::isfinite(tempo) || tempo <= 0.0 || tempo > config.tempo_error_bpm) {
            return OutlierCategory::Error;
        }
    }
    if (r.duration_s && *r.duration_s < 30.0) return OutlierCategory::Intro;
    return OutlierCategory::Noise;
}

DetectionResult detect_genuine(const ArtistCorpus& corpus, const DetectionConfig& config) {
    const std::size_t n = corpus.recordings.size();
    if (n == 0) throw std::invalid_argument("detect_genuine: empty corpus");
    if (!config.kappa_auto() && config.kappa > n) {
        throw std::invalid_argument("detect_genuine: corpus " + corpus.artist_id +
                                    " smaller than kappa");
    }

    StandardizedMatrix std_matrix;
    if (config.standardize) {
        std_matrix = standardize(corpus);
    } else {
        std_matrix.rows.reserve(n);
        const std::size_t d = corpus.recordings[0].features.dimension();
        for (const auto& r : corpus.recordings) std_matrix.rows.push_back(r.features.values);
        std_matrix.means.assign(d, 0.0);
        std_matrix.stds.assign(d, 1.0);
    }

    std::uint32_t k = config.kappa;
    if (config.kappa_auto()) {
        if (n < 3) {
            k = 1;
        } else {
            const auto k_max = static_cast<std::uint32_t>(std::min<std::size_t>(8, n - 1));
            k = k_max >= 2 ? select_k(std_matrix.rows, 2, k_max, config.seed) : 1;
        }
    }

    DetectionResult result;
    result.artist_id = corpus.artist_id;
    result.clustering = kmeans(std_matrix.rows, k, config.seed, config.restarts,
                               config.max_iters, config.tol);

    if (config.n_d >= n) {
        std::fprintf(stderr, "warning: artist %s: n_d >= corpus size, degenerate: all recordings distinct\n",
                     corpus.artist_id.c_str());
    }
    const auto distinct_ids = distinctiveness(corpus, result.clustering, config.n_d);
    const auto adherence = non_adherence(corpus, config.c_g);
    const auto prefiltered_ids =
        distance_prefilter(corpus, result.clustering, std_matrix, config.distance_threshold);
    const auto& main_center = result.clustering.centroids[main_cluster(result.clustering)];

    result.recordings.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Recording& r = corpus.recordings[i];
        RecordingResult rr;
        rr.id = r.id;
        rr.completeness = forms_complete_song(r, config.segment_mode);
        rr.cluster = result.clustering.assignment[i];
        rr.distance_to_main_centroid = distance_to(std_matrix.rows[i], main_center);
        rr.distinct = distinct_ids.contains(r.id);
        if (!adherence.unknown.contains(r.id)) {
            rr.non_adherent = adherence.flagged.contains(r.id);
        }
        rr.prefiltered = prefiltered_ids.contains(r.id);

        const bool deviates = rr.distinct || (rr.non_adherent && *rr.non_adherent);
        const bool gate =
            rr.completeness.status == CompletenessStatus::Complete ||
            (rr.completeness.status == CompletenessStatus::Unknown &&
             config.completeness_policy == CompletenessPolicy::Permissive);
        if (deviates && gate) {
            rr.predicted = Predicted::Genuine;
        } else if (deviates || rr.prefiltered) {
            rr.predicted = Predicted::NonGenuineOutlier;
            rr.category = categorize_heuristic(r, config);
        } else {
            rr.predicted = Predicted::NotOutlier;
        }
        result.recordings.push_back(std::move(rr));
    }
    return result;
}

}  // namespace modet
