#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace modet {

// Feature vector of one recording. Default layout is d=2:
// [tempo (bpm), loudness (dBFS, signed)].
struct FeatureVector {
    std::vector<double> values;

    std::size_t dimension() const { return values.size(); }
    bool operator==(const FeatureVector&) const = default;
};

// Ordered section labels, e.g. {"A","B","A","B"} or {"verse","chorus",...}.
// Empty means "no annotation present".
struct StructureSequence {
    std::vector<std::string> labels;

    std::size_t length() const { return labels.size(); }
    bool empty() const { return labels.empty(); }
    bool operator==(const StructureSequence&) const = default;
};

enum class OutlierCategory {
    Error,
    Noise,
    Speech,
    SoundEffect,
    Intro,
    Genuine,
    NonOutlier,
};

const char* to_string(OutlierCategory c);
std::optional<OutlierCategory> category_from_string(const std::string& s);

struct Recording {
    std::string id;
    std::string artist_id;
    std::string title;
    FeatureVector features;
    std::optional<StructureSequence> structure;
    std::optional<OutlierCategory> label;
    std::optional<double> duration_s;
};

// All recordings of one artist; the unit of detection.
struct ArtistCorpus {
    std::string artist_id;
    std::vector<Recording> recordings;

    std::size_t size() const { return recordings.size(); }
};

enum class SegmentMode { Contiguous, General };

// How recordings without a structure annotation pass the completeness gate.
enum class CompletenessPolicy { Permissive, Strict };

struct DetectionConfig {
    // 0 means automatic selection by silhouette score.
    std::uint32_t kappa = 0;
    std::uint32_t n_d = 5;
    double c_g = 0.1;
    double distance_threshold = 3.0;
    std::uint64_t seed = 0;
    std::uint32_t restarts = 50;
    std::uint32_t max_iters = 300;
    double tol = 1e-8;
    bool standardize = true;
    SegmentMode segment_mode = SegmentMode::Contiguous;
    CompletenessPolicy completeness_policy = CompletenessPolicy::Permissive;
    double tempo_error_bpm = 300.0;

    bool kappa_auto() const { return kappa == 0; }
};

}  // namespace modet
