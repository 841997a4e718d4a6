#include "modet/structure.hpp"

#include <functional>

namespace modet {

const char* to_string(CompletenessStatus s) {
    switch (s) {
        case CompletenessStatus::Complete: return "complete";
        case CompletenessStatus::Incomplete: return "incomplete";
        case CompletenessStatus::Unknown: return "unknown";
    }
    return "unknown";
}

const char* to_string(FailedCondition c) {
    switch (c) {
        case FailedCondition::None: return "none";
        case FailedCondition::LengthAtMostOne: return "length_at_most_one";
        case FailedCondition::NoUniquePair: return "no_unique_pair";
        case FailedCondition::NoRepeatedSegment: return "no_repeated_segment";
    }
    return "none";
}

std::size_t structure_length(const StructureSequence& seq) {
    return seq.labels.size();
}

bool has_unique_pair(const StructureSequence& seq) {
    for (std::size_t i = 0; i + 1 < seq.labels.size(); ++i) {
        if (seq.labels[i] != seq.labels[i + 1]) return true;
    }
    return false;
}

namespace {

bool contiguous_repeat(const std::vector<std::string>& a) {
    const std::size_t n = a.size();
    // A repeated substring of length >= 2 at starts i < j exists iff two
    // adjacent equal pairs match: a[i..i+1] == a[j..j+1] already suffices.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j + 1 < n; ++j) {
            if (a[i] == a[j] && a[i + 1] == a[j + 1]) return true;
        }
    }
    return false;
}

// Literal reading: two index-subsequences of length >= 2 with equal labels,
// differing first and last indices. A length-2 witness is enough, since any
// longer pair of witnesses contains one.
bool general_repeat(const std::vector<std::string>& a) {
    const std::size_t n = a.size();
    for (std::size_t i1 = 0; i1 < n; ++i1)
        for (std::size_t i2 = i1 + 1; i2 < n; ++i2)
            for (std::size_t j1 = 0; j1 < n; ++j1) {
                if (j1 == i1 || a[j1] != a[i1]) continue;
                for (std::size_t j2 = j1 + 1; j2 < n; ++j2) {
                    if (j2 == i2) continue;
                    if (a[j2] == a[i2]) return true;
                }
            }
    return false;
}

}  // namespace

bool has_repeated_segment(const StructureSequence& seq, SegmentMode mode) {
    if (mode == SegmentMode::Contiguous) return contiguous_repeat(seq.labels);
    return general_repeat(seq.labels);
}

CompletenessVerdict forms_complete_song(const Recording& r, SegmentMode mode) {
    if (!r.structure) return {CompletenessStatus::Unknown, FailedCondition::None};
    const StructureSequence& seq = *r.structure;
    if (structure_length(seq) <= 1) {
        return {CompletenessStatus::Incomplete, FailedCondition::LengthAtMostOne};
    }
    if (!has_unique_pair(seq)) {
        return {CompletenessStatus::Incomplete, FailedCondition::NoUniquePair};
    }
    if (!has_repeated_segment(seq, mode)) {
        return {CompletenessStatus::Incomplete, FailedCondition::NoRepeatedSegment};
    }
    return {CompletenessStatus::Complete, FailedCondition::None};
}

}  // namespace modet
