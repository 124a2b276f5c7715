#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace facteval {

// ---------------------------------------------------------------------------
// Verdict labels
// ---------------------------------------------------------------------------

/// Three-way verification verdict for a claim--abstract pair.
enum class VerdictLabel { Supports, Refutes, NEI };

constexpr std::array<VerdictLabel, 3> kVerdictOrder = {
    VerdictLabel::Supports, VerdictLabel::Refutes, VerdictLabel::NEI};

/// Index in the fixed report order (Supports, Refutes, NEI).
constexpr int verdict_index(VerdictLabel v) { return static_cast<int>(v); }

std::string_view verdict_name(VerdictLabel v);        // "supports" etc.
std::string_view verdict_short_name(VerdictLabel v);  // "SUP" etc.

/// Case-insensitive parse accepting the canonical strings "supports",
/// "refutes", "nei" and "not enough information".
std::optional<VerdictLabel> parse_verdict(std::string_view text);

// ---------------------------------------------------------------------------
// Narrative labels (hierarchical taxonomy: 5 denial groups + no-disinformation,
// 33 codes total)
// ---------------------------------------------------------------------------

struct NarrativeLabel {
    int group = 0;  // 0..5
    int sub = 0;

    std::string code() const {
        return std::to_string(group) + "_" + std::to_string(sub);
    }

    friend bool operator==(const NarrativeLabel&, const NarrativeLabel&) = default;
    friend auto operator<=>(const NarrativeLabel&, const NarrativeLabel&) = default;
};

/// Number of valid codes.
inline constexpr int kNarrativeLabelCount = 33;
inline constexpr int kNarrativeGroupCount = 6;

/// All 33 valid labels in fixed taxonomy order (group-major, sub ascending).
/// This order is the column order of every label matrix and report.
const std::vector<NarrativeLabel>& narrative_label_order();

/// Dense column index of a valid label in narrative_label_order().
int narrative_label_index(const NarrativeLabel& label);

/// Short description of a label (taxonomy text), or of a top-level group.
std::string_view narrative_description(const NarrativeLabel& label);
std::string_view narrative_group_description(int group);

bool is_valid_narrative_code(std::string_view code);

/// Parses "G_S" codes; returns nullopt for anything outside the taxonomy.
std::optional<NarrativeLabel> parse_narrative_code(std::string_view code);

/// Same, but throws std::invalid_argument naming the code.
NarrativeLabel parse_narrative_code_or_throw(std::string_view code);

/// The no-disinformation label 0_0, exclusive within any label set.
inline constexpr NarrativeLabel kNoDisinformation{0, 0};

}  // namespace facteval
