#pragma once

#include "modet/types.hpp"

namespace modet {

enum class CompletenessStatus { Complete, Incomplete, Unknown };

enum class FailedCondition {
    None,
    LengthAtMostOne,
    NoUniquePair,
    NoRepeatedSegment,
};

struct CompletenessVerdict {
    CompletenessStatus status = CompletenessStatus::Unknown;
    FailedCondition failed_condition = FailedCondition::None;

    bool operator==(const CompletenessVerdict&) const = default;
};

const char* to_string(CompletenessStatus s);
const char* to_string(FailedCondition c);

// Number of section labels.
std::size_t structure_length(const StructureSequence& seq);

// True iff some adjacent pair of labels differs, e.g. (A-B) but not (A-A).
bool has_unique_pair(const StructureSequence& seq);

// Contiguous: some substring of length >= 2 occurs at two distinct start
// positions (occurrences may overlap). General: two index-subsequences of
// length >= 2 spell the same labels with differing first and last indices.
bool has_repeated_segment(const StructureSequence& seq, SegmentMode mode);

// Unknown when the recording carries no annotation; otherwise Complete iff
// length > 1, a unique pair exists and a segment repeats. The first failed
// check (in that order) is reported.
CompletenessVerdict forms_complete_song(const Recording& r, SegmentMode mode);

}  // namespace modet
