#include "modet/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "modet/rng.hpp"

namespace modet {

ConfusionCounts confusion_counts(const std::map<std::string, bool>& predictions,
                                 const std::map<std::string, bool>& labels) {
    if (predictions.size() != labels.size()) {
        throw std::invalid_argument("confusion_counts: id sets differ in size");
    }
    ConfusionCounts c;
    for (const auto& [id, predicted] : predictions) {
        auto it = labels.find(id);
        if (it == labels.end()) {
            throw std::invalid_argument("confusion_counts: id " + id + " missing from labels");
        }
        const bool actual = it->second;
        if (predicted && actual) ++c.tp;
        else if (predicted && !actual) ++c.fp;
        else if (!predicted && actual) ++c.fn;
        else ++c.tn;
    }
    return c;
}

Metrics rates(const ConfusionCounts& c) {
    Metrics m;
    if (c.tp + c.fn > 0) {
        m.tpr = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
        m.fnr = 1.0 - *m.tpr;  // exact complement
    }
    if (c.fp + c.tn > 0) {
        m.fpr = static_cast<double>(c.fp) / static_cast<double>(c.fp + c.tn);
        m.tnr = 1.0 - *m.fpr;
    }
    return m;
}

EvaluationReport per_artist_report(const std::vector<ArtistCorpus>& corpora,
                                   const DetectionConfig& config) {
    EvaluationReport report;
    for (const auto& corpus : corpora) {
        for (const auto& r : corpus.recordings) {
            if (!r.label) {
                throw std::invalid_argument("per_artist_report: recording " + r.id +
                                            " has no ground-truth label");
            }
        }
        const DetectionResult result = detect_genuine(corpus, config);
        std::map<std::string, bool> predictions, labels;
        for (std::size_t i = 0; i < corpus.recordings.size(); ++i) {
            const auto& r = corpus.recordings[i];
            predictions[r.id] = result.recordings[i].predicted == Predicted::Genuine;
            labels[r.id] = *r.label == OutlierCategory::Genuine;
        }
        EvaluationRow row;
        row.artist_id = corpus.artist_id;
        row.counts = confusion_counts(predictions, labels);
        row.metrics = rates(row.counts);
        report.aggregate_counts.tp += row.counts.tp;
        report.aggregate_counts.fp += row.counts.fp;
        report.aggregate_counts.tn += row.counts.tn;
        report.aggregate_counts.fn += row.counts.fn;
        report.rows.push_back(std::move(row));
    }
    report.aggregate = rates(report.aggregate_counts);
    return report;
}

CategoryHistogram category_histogram(const std::vector<Recording>& records) {
    CategoryHistogram hist;
    for (const auto& r : records) {
        if (!r.label) continue;
        if (*r.label == OutlierCategory::NonOutlier) {
            ++hist.non_outliers;
        } else {
            ++hist.overall[*r.label];
            ++hist.per_artist[r.artist_id][*r.label];
        }
    }
    return hist;
}

namespace {

double normal(detail::SplitMix64& rng) {
    // Box-Muller; uniform() never returns 0 exactly only when next()>>11 != 0,
    // so guard the log argument.
    double u1 = rng.uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> standardized_row(const std::vector<double>& raw,
                                     const StandardizedMatrix& m) {
    std::vector<double> out(raw.size());
    for (std::size_t j = 0; j < raw.size(); ++j) out[j] = (raw[j] - m.means[j]) / m.stds[j];
    return out;
}

double dist(const std::vector<double>& a, const std::vector<double>& b) {
    double d2 = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        d2 += diff * diff;
    }
    return std::sqrt(d2);
}

}  // namespace

ArtistCorpus generate_corpus(const SynthSpec& spec) {
    if (spec.n_main < 1) throw std::invalid_argument("generate_corpus: n_main must be >= 1");
    if (spec.planted_offset_z <= 0.0) {
        throw std::invalid_argument("generate_corpus: planted_offset_z must be positive");
    }
    const std::size_t d = spec.main_center.size();
    if (spec.main_spread.size() != d) {
        throw std::invalid_argument("generate_corpus: center/spread dimension mismatch");
    }

    detail::SplitMix64 rng(spec.seed, 0);
    ArtistCorpus corpus;
    corpus.artist_id = spec.artist_id;

    for (std::uint32_t i = 0; i < spec.n_main; ++i) {
        Recording r;
        r.id = spec.artist_id + "-m" + std::to_string(i);
        r.artist_id = spec.artist_id;
        r.title = "Main " + std::to_string(i);
        r.features.values.resize(d);
        for (std::size_t j = 0; j < d; ++j) {
            r.features.values[j] = spec.main_center[j] + spec.main_spread[j] * normal(rng);
        }
        if (!spec.structure_pool.empty()) {
            r.structure = spec.structure_pool[i % spec.structure_pool.size()];
        }
        r.label = OutlierCategory::NonOutlier;
        r.duration_s = 180.0;
        corpus.recordings.push_back(std::move(r));
    }

    // Plant each outlier along a random direction, then rescale until its
    // distance from the main-points centroid survives full-corpus
    // standardization with the requested margin.
    for (std::uint32_t p = 0; p < spec.n_planted; ++p) {
        std::vector<double> dir(d);
        double norm = 0.0;
        do {
            norm = 0.0;
            for (auto& v : dir) {
                v = normal(rng);
                norm += v * v;
            }
            norm = std::sqrt(norm);
        } while (norm < 1e-12);
        for (auto& v : dir) v /= norm;

        Recording r;
        r.id = spec.artist_id + "-p" + std::to_string(p);
        r.artist_id = spec.artist_id;
        r.title = "Planted " + std::to_string(p);
        if (!spec.planted_structures.empty()) {
            r.structure = spec.planted_structures[p % spec.planted_structures.size()];
        }
        r.label = OutlierCategory::Genuine;
        r.duration_s = 180.0;

        double scale = spec.planted_offset_z;
        corpus.recordings.push_back(r);
        for (int attempt = 0; attempt < 64; ++attempt) {
            auto& planted = corpus.recordings.back();
            planted.features.values.resize(d);
            for (std::size_t j = 0; j < d; ++j) {
                planted.features.values[j] =
                    spec.main_center[j] + dir[j] * scale * std::max(spec.main_spread[j], 1e-9);
            }
            const StandardizedMatrix m = standardize(corpus);
            std::vector<double> main_centroid(d, 0.0);
            for (std::uint32_t i = 0; i < spec.n_main; ++i) {
                for (std::size_t j = 0; j < d; ++j) main_centroid[j] += m.rows[i][j];
            }
            for (auto& v : main_centroid) v /= spec.n_main;
            const double got =
                dist(standardized_row(planted.features.values, m), main_centroid);
            if (got >= spec.planted_offset_z) break;
            scale *= spec.planted_offset_z / std::max(got, 1e-9) * 1.1;
        }
    }
    return corpus;
}

namespace {

std::string full_precision(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string three_decimals(const std::optional<double>& v) {
    if (!v) return "N/A";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", *v);
    return buf;
}

}  // namespace

std::string emit_cluster_plot_data(const ArtistCorpus& corpus, const DetectionResult& result) {
    const StandardizedMatrix m = standardize(corpus);
    const std::size_t d = m.means.size();
    std::ostringstream out;
    out << "id";
    for (std::size_t j = 0; j < d; ++j) out << ",z" << j;
    out << ",cluster,predicted,distance\n";
    for (std::size_t i = 0; i < corpus.recordings.size(); ++i) {
        const auto& rr = result.recordings[i];
        out << corpus.recordings[i].id;
        for (std::size_t j = 0; j < d; ++j) out << ',' << full_precision(m.rows[i][j]);
        out << ',' << rr.cluster << ',' << to_string(rr.predicted) << ','
            << full_precision(rr.distance_to_main_centroid) << '\n';
    }
    for (std::uint32_t c = 0; c < result.clustering.k; ++c) {
        out << "centroid_" << c;
        for (std::size_t j = 0; j < d; ++j) {
            out << ',' << full_precision(result.clustering.centroids[c][j]);
        }
        out << ',' << c << ",centroid,0\n";
    }
    return out.str();
}

std::string format_report_csv(const EvaluationReport& report) {
    std::ostringstream out;
    out << "Artist Name,TPR,FPR,TNR,FNR\n";
    for (const auto& row : report.rows) {
        out << row.artist_id << ',' << three_decimals(row.metrics.tpr) << ','
            << three_decimals(row.metrics.fpr) << ',' << three_decimals(row.metrics.tnr) << ','
            << three_decimals(row.metrics.fnr) << '\n';
    }
    out << "ALL," << three_decimals(report.aggregate.tpr) << ','
        << three_decimals(report.aggregate.fpr) << ',' << three_decimals(report.aggregate.tnr)
        << ',' << three_decimals(report.aggregate.fnr) << '\n';
    return out.str();
}

std::string format_histogram_csv(const CategoryHistogram& hist) {
    static constexpr OutlierCategory order[] = {
        OutlierCategory::Genuine,    OutlierCategory::Error, OutlierCategory::Speech,
        OutlierCategory::SoundEffect, OutlierCategory::Intro, OutlierCategory::Noise,
    };
    std::ostringstream out;
    out << "category,count\n";
    for (auto cat : order) {
        auto it = hist.overall.find(cat);
        out << to_string(cat) << ',' << (it == hist.overall.end() ? 0 : it->second) << '\n';
    }
    out << "non_outlier," << hist.non_outliers << '\n';
    return out.str();
}

std::string serialize_detection_result(const DetectionResult& result) {
    std::ostringstream out;
    for (const auto& rr : result.recordings) {
        nlohmann::json j;
        j["id"] = rr.id;
        j["cluster"] = rr.cluster;
        j["distance"] = rr.distance_to_main_centroid;
        j["distinct"] = rr.distinct;
        if (rr.non_adherent) j["non_adherent"] = *rr.non_adherent;
        else j["non_adherent"] = nullptr;
        j["prefiltered"] = rr.prefiltered;
        j["completeness"] = to_string(rr.completeness.status);
        j["predicted"] = to_string(rr.predicted);
        if (rr.category) j["category"] = to_string(*rr.category);
        out << j.dump() << '\n';
    }
    return out.str();
}

}  // namespace modet
