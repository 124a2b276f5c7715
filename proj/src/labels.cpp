#include "facteval/labels.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>

namespace facteval {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// Sub-label counts per top-level group; defines the 33-code taxonomy.
constexpr std::array<int, kNarrativeGroupCount> kGroupSizes = {1, 9, 6, 7, 6, 4};

const char* kGroupDescriptions[kNarrativeGroupCount] = {
    "No disinformation narrative",
    "Global warming is not happening",
    "Human greenhouse gases are not causing climate change",
    "Climate impacts/global warming is beneficial/not bad",
    "Climate solutions won't work",
    "Climate movement/science is unreliable",
};

const char* kLabelDescriptions[kNarrativeLabelCount] = {
    "No disinformation narrative detected",
    "Global warming is not happening (general)",
    "Ice/permafrost/snow cover isn't melting",
    "We're heading into an ice age/global cooling",
    "Weather is cold/snowing",
    "Climate hasn't warmed over the last decade(s)",
    "Oceans are cooling/not warming",
    "Sea level rise is exaggerated/not accelerating",
    "Extreme weather isn't increasing/not linked to climate change",
    "Changed name from 'global warming' to 'climate change'",
    "Human GHGs are not causing climate change (general)",
    "It's natural cycles/variation",
    "Non-GHG human forcings (aerosols, land use)",
    "No evidence for GHG effect driving climate change",
    "CO2 is not rising/ocean pH is not falling",
    "Human CO2 emissions are miniscule",
    "Climate impacts are beneficial/not bad (general)",
    "Climate sensitivity is low/negative feedbacks",
    "Species/ecosystems aren't impacted/are benefiting",
    "CO2 is beneficial/plant food",
    "It's only a few degrees (or less)",
    "Climate change doesn't contribute to conflict/threaten security",
    "Climate change doesn't negatively impact health",
    "Climate solutions won't work (general)",
    "Climate policies are harmful",
    "Climate policies are ineffective/flawed",
    "Too hard to solve (politically/economically/technically)",
    "Clean energy/biofuels won't work",
    "People need energy from fossil fuels/nuclear",
    "Climate movement/science is unreliable (general)",
    "Science is uncertain/unsound (data, methods, models)",
    "Climate movement is alarmist/political/biased",
    "Climate change is a conspiracy",
};

}  // namespace

std::string_view verdict_name(VerdictLabel v) {
    switch (v) {
        case VerdictLabel::Supports: return "supports";
        case VerdictLabel::Refutes: return "refutes";
        case VerdictLabel::NEI: return "nei";
    }
    return "";
}

std::string_view verdict_short_name(VerdictLabel v) {
    switch (v) {
        case VerdictLabel::Supports: return "SUP";
        case VerdictLabel::Refutes: return "REF";
        case VerdictLabel::NEI: return "NEI";
    }
    return "";
}

std::optional<VerdictLabel> parse_verdict(std::string_view text) {
    std::string t = lower(text);
    if (t == "supports") return VerdictLabel::Supports;
    if (t == "refutes") return VerdictLabel::Refutes;
    if (t == "nei" || t == "not enough information") return VerdictLabel::NEI;
    return std::nullopt;
}

const std::vector<NarrativeLabel>& narrative_label_order() {
    static const std::vector<NarrativeLabel> order = [] {
        std::vector<NarrativeLabel> labels;
        labels.reserve(kNarrativeLabelCount);
        for (int g = 0; g < kNarrativeGroupCount; ++g)
            for (int s = 0; s < kGroupSizes[g]; ++s) labels.push_back({g, s});
        return labels;
    }();
    return order;
}

int narrative_label_index(const NarrativeLabel& label) {
    int idx = 0;
    for (int g = 0; g < label.group; ++g) idx += kGroupSizes[g];
    return idx + label.sub;
}

std::string_view narrative_description(const NarrativeLabel& label) {
    return kLabelDescriptions[narrative_label_index(label)];
}

std::string_view narrative_group_description(int group) {
    return kGroupDescriptions[group];
}

std::optional<NarrativeLabel> parse_narrative_code(std::string_view code) {
    // Strict "G_S" shape: no signs, spaces or leading zeros beyond the digit itself.
    auto sep = code.find('_');
    if (sep == std::string_view::npos) return std::nullopt;
    std::string_view g_part = code.substr(0, sep);
    std::string_view s_part = code.substr(sep + 1);
    auto parse_digit_run = [](std::string_view part) -> std::optional<int> {
        if (part.empty() || part.size() > 2) return std::nullopt;
        int v = 0;
        for (char c : part) {
            if (c < '0' || c > '9') return std::nullopt;
            v = v * 10 + (c - '0');
        }
        if (part.size() > 1 && part[0] == '0') return std::nullopt;
        return v;
    };
    auto g = parse_digit_run(g_part);
    auto s = parse_digit_run(s_part);
    if (!g || !s) return std::nullopt;
    if (*g < 0 || *g >= kNarrativeGroupCount) return std::nullopt;
    if (*s < 0 || *s >= kGroupSizes[*g]) return std::nullopt;
    return NarrativeLabel{*g, *s};
}

bool is_valid_narrative_code(std::string_view code) {
    return parse_narrative_code(code).has_value();
}

NarrativeLabel parse_narrative_code_or_throw(std::string_view code) {
    auto label = parse_narrative_code(code);
    if (!label)
        throw std::invalid_argument("unknown narrative code \"" + std::string(code) + "\"");
    return *label;
}

}  // namespace facteval
