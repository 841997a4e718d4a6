#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "modet/kmeans.hpp"
#include "modet/structure.hpp"
#include "modet/types.hpp"

namespace modet {

enum class Predicted { Genuine, NotOutlier, NonGenuineOutlier };

const char* to_string(Predicted p);

struct RecordingResult {
    std::string id;
    CompletenessVerdict completeness;
    std::uint32_t cluster = 0;
    double distance_to_main_centroid = 0.0;  // standardized units
    bool distinct = false;
    std::optional<bool> non_adherent;  // nullopt = no structure annotation
    bool prefiltered = false;
    Predicted predicted = Predicted::NotOutlier;
    std::optional<OutlierCategory> category;  // set for NonGenuineOutlier
};

struct DetectionResult {
    std::string artist_id;
    Clustering clustering;
    std::vector<RecordingResult> recordings;  // corpus order
};

// Members of clusters with cardinality strictly below n_d.
std::set<std::string> distinctiveness(const ArtistCorpus& corpus,
                                      const Clustering& clustering, std::uint32_t n_d);

// Fraction of the corpus sharing m's exact structure sequence (m counts
// itself). Requires m to be annotated; unannotated recordings never match.
double structure_ratio(const ArtistCorpus& corpus, const Recording& m);

struct NonAdherenceSets {
    std::set<std::string> flagged;   // annotated, ratio < c_g
    std::set<std::string> unknown;   // no annotation
};

NonAdherenceSets non_adherence(const ArtistCorpus& corpus, double c_g);

// Recordings strictly farther than threshold (standardized units) from the
// main-cluster centroid. Main cluster = largest, lowest index on ties.
std::set<std::string> distance_prefilter(const ArtistCorpus& corpus,
                                         const Clustering& clustering,
                                         const StandardizedMatrix& std_matrix,
                                         double threshold);

// Fills prediction-side categories for flagged non-genuine outliers; a
// ground-truth label is returned unchanged when present.
OutlierCategory categorize_heuristic(const Recording& r, const DetectionConfig& config);

// Full pipeline: standardize, cluster (auto kappa if requested), then compose
// the genuine-outlier decision per recording.
DetectionResult detect_genuine(const ArtistCorpus& corpus, const DetectionConfig& config);

}  // namespace modet
