#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "modet/structure.hpp"

using namespace modet;

namespace {

StructureSequence seq(std::initializer_list<const char*> labels) {
    StructureSequence s;
    for (auto* l : labels) s.labels.emplace_back(l);
    return s;
}

Recording with_structure(StructureSequence s) {
    Recording r;
    r.id = "t";
    r.structure = std::move(s);
    return r;
}

// Independent oracle: enumerate every substring pair of length >= 2.
bool contiguous_oracle(const std::vector<std::string>& a) {
    const std::size_t n = a.size();
    for (std::size_t len = 2; len <= n; ++len)
        for (std::size_t i = 0; i + len <= n; ++i)
            for (std::size_t j = i + 1; j + len <= n; ++j)
                if (std::equal(a.begin() + i, a.begin() + i + len, a.begin() + j)) return true;
    return false;
}

// Independent oracle: enumerate index-subsequence pairs up to full length.
bool general_oracle(const std::vector<std::string>& a) {
    const std::size_t n = a.size();
    std::vector<std::size_t> first, second;
    // Recursion over subset pairs is overkill at these sizes; the paper's
    // condition reduces to a length-2 witness, but enumerate longer ones too.
    for (std::size_t i1 = 0; i1 < n; ++i1)
        for (std::size_t i2 = i1 + 1; i2 < n; ++i2)
            for (std::size_t j1 = 0; j1 < n; ++j1)
                for (std::size_t j2 = j1 + 1; j2 < n; ++j2)
                    if (i1 != j1 && i2 != j2 && a[i1] == a[j1] && a[i2] == a[j2]) return true;
    return false;
}

void all_sequences(std::size_t length, std::size_t alphabet,
                   std::vector<std::string>& current,
                   const std::function<void(const std::vector<std::string>&)>& visit) {
    if (current.size() == length) {
        visit(current);
        return;
    }
    for (std::size_t s = 0; s < alphabet; ++s) {
        current.push_back(std::string(1, static_cast<char>('A' + s)));
        all_sequences(length, alphabet, current, visit);
        current.pop_back();
    }
}

}  // namespace

TEST_CASE("structure_length counts labels") {
    CHECK(structure_length(seq({"A", "B", "A", "B"})) == 4);
    CHECK(structure_length(seq({})) == 0);
    CHECK(structure_length(seq({"A"})) == 1);
}

TEST_CASE("has_unique_pair requires adjacent distinct labels") {
    CHECK(has_unique_pair(seq({"A", "B"})));
    CHECK_FALSE(has_unique_pair(seq({"A", "A", "A"})));
    CHECK_FALSE(has_unique_pair(seq({})));
    CHECK_FALSE(has_unique_pair(seq({"A"})));
}

TEST_CASE("has_repeated_segment worked examples") {
    CHECK(has_repeated_segment(seq({"A", "B", "A", "B"}), SegmentMode::Contiguous));
    CHECK_FALSE(has_repeated_segment(seq({"A", "B", "C"}), SegmentMode::Contiguous));
    CHECK_FALSE(has_repeated_segment(seq({"A", "B", "A", "C", "B"}), SegmentMode::Contiguous));
    CHECK(has_repeated_segment(seq({"A", "B", "A", "C", "B"}), SegmentMode::General));
    // Overlapping occurrences count.
    CHECK(has_repeated_segment(seq({"A", "B", "A", "B", "A", "B"}), SegmentMode::Contiguous));
}

TEST_CASE("contiguous mode matches brute force on every short sequence") {
    std::size_t checked = 0;
    for (std::size_t len = 0; len <= 8; ++len) {
        std::vector<std::string> cur;
        all_sequences(len, 3, cur, [&](const std::vector<std::string>& labels) {
            StructureSequence s{labels};
            CHECK(has_repeated_segment(s, SegmentMode::Contiguous) == contiguous_oracle(labels));
            ++checked;
        });
    }
    CHECK(checked == 9841);
}

TEST_CASE("general mode matches brute force, and contiguous implies general") {
    for (std::size_t len = 0; len <= 6; ++len) {
        std::vector<std::string> cur;
        all_sequences(len, 3, cur, [&](const std::vector<std::string>& labels) {
            StructureSequence s{labels};
            const bool general = has_repeated_segment(s, SegmentMode::General);
            CHECK(general == general_oracle(labels));
            if (has_repeated_segment(s, SegmentMode::Contiguous)) CHECK(general);
        });
    }
}

TEST_CASE("forms_complete_song verdicts") {
    CHECK(forms_complete_song(with_structure(seq({"A", "B", "A", "B"})), SegmentMode::Contiguous) ==
          CompletenessVerdict{CompletenessStatus::Complete, FailedCondition::None});
    CHECK(forms_complete_song(with_structure(seq({"A", "A", "A", "A"})), SegmentMode::Contiguous) ==
          CompletenessVerdict{CompletenessStatus::Incomplete, FailedCondition::NoUniquePair});
    CHECK(forms_complete_song(with_structure(seq({"A"})), SegmentMode::Contiguous) ==
          CompletenessVerdict{CompletenessStatus::Incomplete, FailedCondition::LengthAtMostOne});
    CHECK(forms_complete_song(with_structure(seq({"A", "B", "C"})), SegmentMode::Contiguous) ==
          CompletenessVerdict{CompletenessStatus::Incomplete, FailedCondition::NoRepeatedSegment});
    Recording unannotated;
    unannotated.id = "t";
    CHECK(forms_complete_song(unannotated, SegmentMode::Contiguous).status ==
          CompletenessStatus::Unknown);
}

TEST_CASE("no complete contiguous sequence shorter than 4 exists") {
    for (std::size_t len = 0; len <= 3; ++len) {
        std::vector<std::string> cur;
        all_sequences(len, 3, cur, [&](const std::vector<std::string>& labels) {
            auto v = forms_complete_song(with_structure(StructureSequence{labels}),
                                         SegmentMode::Contiguous);
            CHECK(v.status != CompletenessStatus::Complete);
        });
    }
}

TEST_CASE("verdicts are invariant under label bijections") {
    const std::vector<std::vector<std::string>> cases = {
        {"A", "B", "A", "B"}, {"A", "A", "B"}, {"A", "B", "C", "A", "B"}, {"A"}, {},
    };
    const std::map<std::string, std::string> rename = {{"A", "x"}, {"B", "y"}, {"C", "z"}};
    for (const auto& labels : cases) {
        std::vector<std::string> renamed;
        for (const auto& l : labels) renamed.push_back(rename.at(l));
        for (auto mode : {SegmentMode::Contiguous, SegmentMode::General}) {
            CHECK(forms_complete_song(with_structure(StructureSequence{labels}), mode) ==
                  forms_complete_song(with_structure(StructureSequence{renamed}), mode));
        }
    }
}
