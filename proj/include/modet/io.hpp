#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "modet/types.hpp"

namespace modet {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Newline-delimited JSON records, one recording per line. Blank lines are
// skipped. Aborts on the first malformed line, duplicate id, non-finite
// feature or negative duration, naming the offending line.
std::vector<Recording> parse_feature_records(std::istream& in);
std::vector<Recording> parse_feature_records_file(const std::string& path);

// One JSON line per recording, same schema the parser reads.
std::string serialize_record(const Recording& r);
void write_feature_records(std::ostream& out, const std::vector<Recording>& records);

// One corpus per distinct artist_id, ordered by first appearance.
// Throws ParseError when one artist mixes feature dimensions.
std::vector<ArtistCorpus> group_by_artist(const std::vector<Recording>& records);

// Flat JSON object of DetectionConfig keys; missing keys take defaults,
// unknown keys are collected into `warnings`.
DetectionConfig parse_config(const std::string& json_text, std::vector<std::string>* warnings = nullptr);
DetectionConfig load_config(const std::string& path, std::vector<std::string>* warnings = nullptr);

}  // namespace modet
