#include "modet/types.hpp"

namespace modet {

const char* to_string(OutlierCategory c) {
    switch (c) {
        case OutlierCategory::Error: return "error";
        case OutlierCategory::Noise: return "noise";
        case OutlierCategory::Speech: return "speech";
        case OutlierCategory::SoundEffect: return "sound_effect";
        case OutlierCategory::Intro: return "intro";
        case OutlierCategory::Genuine: return "genuine";
        case OutlierCategory::NonOutlier: return "non_outlier";
    }
    return "unknown";
}

std::optional<OutlierCategory> category_from_string(const std::string& s) {
    if (s == "error") return OutlierCategory::Error;
    if (s == "noise") return OutlierCategory::Noise;
    if (s == "speech") return OutlierCategory::Speech;
    if (s == "sound_effect") return OutlierCategory::SoundEffect;
    if (s == "intro") return OutlierCategory::Intro;
    if (s == "genuine") return OutlierCategory::Genuine;
    if (s == "non_outlier") return OutlierCategory::NonOutlier;
    return std::nullopt;
}

}  // namespace modet
