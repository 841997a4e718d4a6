#include "modet/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace modet {

using nlohmann::json;

namespace {

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

Recording parse_line(const std::string& line, std::size_t line_no) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        fail(line_no, std::string("malformed record: ") + e.what());
    }
    if (!j.is_object()) fail(line_no, "record is not an object");

    Recording r;
    try {
        r.id = j.at("id").get<std::string>();
        r.artist_id = j.at("artist_id").get<std::string>();
        r.title = j.at("title").get<std::string>();

        if (j.contains("features")) {
            r.features.values = j.at("features").get<std::vector<double>>();
        } else {
            r.features.values = {j.at("tempo").get<double>(), j.at("loudness").get<double>()};
        }
        if (j.contains("structure")) {
            StructureSequence seq;
            seq.labels = j.at("structure").get<std::vector<std::string>>();
            r.structure = std::move(seq);
        }
        if (j.contains("label")) {
            auto s = j.at("label").get<std::string>();
            auto cat = category_from_string(s);
            if (!cat) fail(line_no, "unknown label \"" + s + "\"");
            r.label = *cat;
        }
        if (j.contains("duration_s")) {
            r.duration_s = j.at("duration_s").get<double>();
        }
    } catch (const json::exception& e) {
        fail(line_no, std::string("malformed record: ") + e.what());
    }

    for (double v : r.features.values) {
        if (!std::isfinite(v)) fail(line_no, "non-finite feature in record \"" + r.id + "\"");
    }
    if (r.duration_s && (*r.duration_s < 0.0 || !std::isfinite(*r.duration_s))) {
        fail(line_no, "negative duration in record \"" + r.id + "\"");
    }
    return r;
}

}  // namespace

std::vector<Recording> parse_feature_records(std::istream& in) {
    std::vector<Recording> records;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Recording r = parse_line(line, line_no);
        if (!seen_ids.insert(r.id).second) fail(line_no, "duplicate id " + r.id);
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<Recording> parse_feature_records_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_feature_records(in);
}

std::string serialize_record(const Recording& r) {
    json j;
    j["id"] = r.id;
    j["artist_id"] = r.artist_id;
    j["title"] = r.title;
    if (r.features.dimension() == 2) {
        j["tempo"] = r.features.values[0];
        j["loudness"] = r.features.values[1];
    } else {
        j["features"] = r.features.values;
    }
    if (r.structure) j["structure"] = r.structure->labels;
    if (r.label) j["label"] = to_string(*r.label);
    if (r.duration_s) j["duration_s"] = *r.duration_s;
    return j.dump();
}

void write_feature_records(std::ostream& out, const std::vector<Recording>& records) {
    for (const auto& r : records) out << serialize_record(r) << '\n';
}

std::vector<ArtistCorpus> group_by_artist(const std::vector<Recording>& records) {
    std::vector<ArtistCorpus> corpora;
    std::unordered_map<std::string, std::size_t> index;
    for (const auto& r : records) {
        auto [it, inserted] = index.try_emplace(r.artist_id, corpora.size());
        if (inserted) corpora.push_back({r.artist_id, {}});
        ArtistCorpus& corpus = corpora[it->second];
        if (!corpus.recordings.empty() &&
            corpus.recordings.front().features.dimension() != r.features.dimension()) {
            throw ParseError("artist " + r.artist_id + ": mixed feature dimensions (" +
                             std::to_string(corpus.recordings.front().features.dimension()) +
                             " vs " + std::to_string(r.features.dimension()) + ")");
        }
        corpus.recordings.push_back(r);
    }
    return corpora;
}

DetectionConfig parse_config(const std::string& json_text, std::vector<std::string>* warnings) {
    json j = json::object();
    if (json_text.find_first_not_of(" \t\r\n") != std::string::npos) {
        try {
            j = json::parse(json_text);
        } catch (const json::parse_error& e) {
            throw ParseError(std::string("config: ") + e.what());
        }
    }
    if (!j.is_object()) throw ParseError("config: expected a flat object");

    DetectionConfig cfg;
    for (auto& [key, value] : j.items()) {
        try {
            if (key == "kappa") {
                if (value.is_string() && value.get<std::string>() == "auto") {
                    cfg.kappa = 0;
                } else {
                    cfg.kappa = value.get<std::uint32_t>();
                    if (cfg.kappa == 0) throw ParseError("config: kappa must be positive or \"auto\"");
                }
            } else if (key == "n_d") {
                cfg.n_d = value.get<std::uint32_t>();
                if (cfg.n_d == 0) throw ParseError("config: n_d must be positive");
            } else if (key == "c_g") {
                cfg.c_g = value.get<double>();
            } else if (key == "distance_threshold") {
                cfg.distance_threshold = value.get<double>();
                if (cfg.distance_threshold <= 0) throw ParseError("config: distance_threshold must be positive");
            } else if (key == "seed") {
                cfg.seed = value.get<std::uint64_t>();
            } else if (key == "restarts") {
                cfg.restarts = value.get<std::uint32_t>();
                if (cfg.restarts == 0) throw ParseError("config: restarts must be positive");
            } else if (key == "max_iters") {
                cfg.max_iters = value.get<std::uint32_t>();
                if (cfg.max_iters == 0) throw ParseError("config: max_iters must be positive");
            } else if (key == "tol") {
                cfg.tol = value.get<double>();
                if (cfg.tol <= 0) throw ParseError("config: tol must be positive");
            } else if (key == "standardize") {
                cfg.standardize = value.get<bool>();
            } else if (key == "segment_mode") {
                auto s = value.get<std::string>();
                if (s == "contiguous") cfg.segment_mode = SegmentMode::Contiguous;
                else if (s == "general") cfg.segment_mode = SegmentMode::General;
                else throw ParseError("config: segment_mode must be contiguous or general");
            } else if (key == "completeness_policy") {
                auto s = value.get<std::string>();
                if (s == "permissive") cfg.completeness_policy = CompletenessPolicy::Permissive;
                else if (s == "strict") cfg.completeness_policy = CompletenessPolicy::Strict;
                else throw ParseError("config: completeness_policy must be permissive or strict");
            } else if (key == "tempo_error_bpm") {
                cfg.tempo_error_bpm = value.get<double>();
                if (cfg.tempo_error_bpm <= 0) throw ParseError("config: tempo_error_bpm must be positive");
            } else {
                if (warnings) warnings->push_back("unknown config key \"" + key + "\"");
            }
        } catch (const json::exception& e) {
            throw ParseError("config: bad value for " + key + ": " + e.what());
        }
    }
    if (!(cfg.c_g > 0.0 && cfg.c_g <= 1.0)) {
        throw ParseError("config: c_g must be in (0,1]");
    }
    return cfg;
}

DetectionConfig load_config(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), warnings);
}

}  // namespace modet
