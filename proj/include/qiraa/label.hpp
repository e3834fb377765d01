#pragma once

#include <array>
#include <string>
#include <string_view>

#include "qiraa/errors.hpp"

namespace qiraa {

/// The four readability levels, in canonical order. The numeric order is
/// load-bearing: argmax ties in classifiers break toward the lowest index.
enum class Label : int {
    Easy = 0,
    Medium = 1,
    Difficult = 2,
    VeryDifficult = 3,
};

inline constexpr int kNumLabels = 4;

inline constexpr std::array<Label, 4> all_labels() {
    return {Label::Easy, Label::Medium, Label::Difficult, Label::VeryDifficult};
}

/// Wire name used in JSONL files and flags.
inline const char* label_name(Label l) {
    switch (l) {
        case Label::Easy: return "easy";
        case Label::Medium: return "medium";
        case Label::Difficult: return "difficult";
        case Label::VeryDifficult: return "very_difficult";
    }
    return "?";
}

/// Human name used in rendered tables.
inline const char* label_display(Label l) {
    switch (l) {
        case Label::Easy: return "Easy";
        case Label::Medium: return "Medium";
        case Label::Difficult: return "Difficult";
        case Label::VeryDifficult: return "Very difficult";
    }
    return "?";
}

inline Label parse_label(std::string_view s) {
    for (Label l : all_labels())
        if (s == label_name(l)) return l;
    throw DataError("unknown label '" + std::string(s) + "'");
}

inline int label_index(Label l) { return static_cast<int>(l); }

} // namespace qiraa
