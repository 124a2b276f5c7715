#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "facteval/corpus.hpp"
#include "facteval/verification_metrics.hpp"  // LabelPRF

namespace facteval {

/// Binary claim x label matrix in a fixed column order.
struct LabelMatrix {
    std::vector<NarrativeLabel> labels;           // column order
    std::vector<std::string> claim_ids;           // row order (sorted by claim_id)
    std::vector<std::vector<std::uint8_t>> rows;  // rows[i][j] in {0,1}
    std::vector<std::string> unsubmitted;         // rows forced to all-zero (predictions)
};

/// Aligns gold and predicted label sets into binary matrices over the gold
/// claim set. Unsubmitted claims get all-zero prediction rows and are
/// flagged; a predicted claim absent from gold is an error.
std::pair<LabelMatrix, LabelMatrix> binarize(
    const NarrativeSet& gold, const NarrativeSet& predictions,
    const std::vector<NarrativeLabel>& label_order = narrative_label_order());

enum class MacroUniverse {
    AllLabels,      // zero-support labels contribute 0 (ranking default)
    PresentLabels,  // only labels with gold support enter the macro mean
};

struct NarrativeReport {
    MacroUniverse universe = MacroUniverse::AllLabels;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    // Both macro conventions are always computed; the non-default one is
    // surfaced so the discrepancy is visible.
    double macro_f1_all_labels = 0.0;
    double macro_f1_present_labels = 0.0;
    double micro_f1 = 0.0;
    double weighted_f1 = 0.0;
    std::vector<LabelPRF> per_label;  // one entry per column
    std::size_t claims = 0;
};

/// Per-label binary P/R/F1 (0/0 -> 0), macro/micro/weighted aggregates.
/// Throws std::invalid_argument on shape mismatch.
NarrativeReport multilabel_scores(const LabelMatrix& gold, const LabelMatrix& predictions,
                                  MacroUniverse universe = MacroUniverse::AllLabels);

}  // namespace facteval
