#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modet/detect.hpp"
#include "modet/types.hpp"

namespace modet {

struct ConfusionCounts {
    std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
};

// Rates as in the per-artist report; nullopt = N/A (zero denominator).
struct Metrics {
    std::optional<double> tpr, fpr, tnr, fnr;
};

struct EvaluationRow {
    std::string artist_id;
    ConfusionCounts counts;
    Metrics metrics;
};

struct EvaluationReport {
    std::vector<EvaluationRow> rows;      // input corpus order
    ConfusionCounts aggregate_counts;     // column sums
    Metrics aggregate;                    // micro-averaged
};

// Positive class = Genuine, on matching id sets.
ConfusionCounts confusion_counts(const std::map<std::string, bool>& predictions,
                                 const std::map<std::string, bool>& labels);

Metrics rates(const ConfusionCounts& c);

// Runs detect_genuine per corpus; every recording must carry a label.
EvaluationReport per_artist_report(const std::vector<ArtistCorpus>& corpora,
                                   const DetectionConfig& config);

struct CategoryHistogram {
    std::map<OutlierCategory, std::uint64_t> overall;  // NonOutlier excluded
    std::uint64_t non_outliers = 0;
    std::map<std::string, std::map<OutlierCategory, std::uint64_t>> per_artist;
};

CategoryHistogram category_histogram(const std::vector<Recording>& records);

struct SynthSpec {
    std::uint32_t n_main = 100;
    std::vector<double> main_center = {120.0, -10.0};
    std::vector<double> main_spread = {10.0, 2.0};  // per-dimension std
    std::uint32_t n_planted = 0;
    double planted_offset_z = 6.0;  // minimum standardized distance
    std::vector<StructureSequence> structure_pool;
    std::vector<StructureSequence> planted_structures;
    std::uint64_t seed = 0;
    std::string artist_id = "synth";
};

// Gaussian main blob plus planted genuine outliers at >= planted_offset_z
// standardized units from the main centroid. Deterministic per seed.
ArtistCorpus generate_corpus(const SynthSpec& spec);

// CSV rows for a cluster scatter plot: one row per recording plus one per
// centroid, in standardized coordinates.
std::string emit_cluster_plot_data(const ArtistCorpus& corpus, const DetectionResult& result);

// Table-shaped CSV: Artist Name,TPR,FPR,TNR,FNR with literal N/A,
// 3 decimal places.
std::string format_report_csv(const EvaluationReport& report);

std::string format_histogram_csv(const CategoryHistogram& hist);

// One JSON line per recording result.
std::string serialize_detection_result(const DetectionResult& result);

}  // namespace modet
