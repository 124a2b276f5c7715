#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "facteval/jsonl.hpp"
#include "facteval/labels.hpp"
#include "facteval/parallel.hpp"

namespace facteval {

/// Complete items x annotators design: every cell present and non-empty.
/// Items and annotators are kept sorted; all statistics are permutation
/// invariant so the order only fixes report layout.
struct AnnotationMatrix {
    std::vector<std::string> items;
    std::vector<std::string> annotators;
    // cells[item][annotator] = label set (sorted, deduplicated)
    std::vector<std::vector<std::vector<NarrativeLabel>>> cells;

    std::size_t item_count() const { return items.size(); }
    std::size_t annotator_count() const { return annotators.size(); }
    bool cell_has_label(std::size_t item, std::size_t annotator,
                        const NarrativeLabel& label) const;
    bool cell_has_group(std::size_t item, std::size_t annotator, int group) const;
};

/// Reads one record per (claim_id, annotator_id) with a label-code list and
/// enforces the complete design (missing cells are listed as errors).
AnnotationMatrix load_annotations(const std::string& path, IssueList& issues,
                                  bool strict = false);

// ---------------------------------------------------------------------------
// Agreement coefficients. `nullopt` is the "undefined" sentinel: zero
// expected disagreement (alpha), degenerate marginals (kappa), or a label
// never assigned (PA).
// ---------------------------------------------------------------------------

/// Krippendorff's alpha for nominal binary data from per-unit value counts
/// (unit = {count of 0s, count of 1s}); coincidence-matrix formulation
/// without missing-data handling.
std::optional<double> krippendorff_alpha_binary(
    const std::vector<std::array<std::size_t, 2>>& unit_counts);

/// Alpha over the item slices of one label.
std::optional<double> per_label_binary_alpha(const AnnotationMatrix& matrix,
                                             const NarrativeLabel& label);

/// Alpha with each (item x label) pair treated as an independent binary
/// unit. The label universe is the set of labels observed in the matrix, so
/// a matrix with a single label used everywhere is undefined (zero variance)
/// rather than trivially 1.
std::optional<double> overall_alpha(const AnnotationMatrix& matrix);

/// Alpha for a top-level group: a cell is positive when any of its labels
/// belongs to the group.
std::optional<double> top_level_alpha(const AnnotationMatrix& matrix, int group);

/// sum(prev_l * alpha_l) / sum(prev_l) over labels with defined alpha.
std::optional<double> prevalence_weighted_alpha(
    const std::vector<std::optional<double>>& alphas, const std::vector<double>& prevalences);

/// Cohen's kappa on the two annotators' flattened (item x label) binary
/// vectors over the full taxonomy.
std::optional<double> pairwise_kappa(const AnnotationMatrix& matrix,
                                     std::size_t annotator_a, std::size_t annotator_b);

/// Kappa on the single-label binary vectors of two annotators.
std::optional<double> pairwise_kappa_for_label(const AnnotationMatrix& matrix,
                                               const NarrativeLabel& label,
                                               std::size_t annotator_a,
                                               std::size_t annotator_b);

/// Dice positive agreement pooled over annotator pairs:
/// 2*sum(TP) / (2*sum(TP) + sum(FP) + sum(FN)).
std::optional<double> positive_agreement(const AnnotationMatrix& matrix,
                                         const NarrativeLabel& label);

/// Per-pair-mean Dice variant (mean over pairs with a defined denominator).
std::optional<double> positive_agreement_pair_mean(const AnnotationMatrix& matrix,
                                                   const NarrativeLabel& label);

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

struct LabelAgreement {
    NarrativeLabel label;
    std::size_t n = 0;        // items where >=1 annotator assigned the label
    double prevalence = 0.0;  // positive (item x annotator) decisions / all decisions
    std::optional<double> alpha;
    std::optional<double> mean_pairwise_kappa;
    std::optional<double> positive_agreement;
};

struct GroupAgreement {
    int group = 0;
    std::size_t n = 0;
    double prevalence = 0.0;
    std::optional<double> alpha;
};

struct AgreementReport {
    std::optional<double> overall_alpha;
    std::vector<LabelAgreement> per_label;  // taxonomy order
    std::optional<double> prevalence_weighted_alpha;
    std::vector<GroupAgreement> top_level;  // groups 0..5
    std::optional<double> top_level_prevalence_weighted_alpha;
    bool includes_no_disinformation = false;  // 0_0 / group 0 in the weighted averages
    std::vector<std::string> annotators;
    std::vector<std::vector<std::optional<double>>> pairwise_kappa_matrix;
};

/// Requires >= 2 annotators and >= 1 item. The no-disinformation label is
/// excluded from the prevalence-weighted averages unless requested: those
/// averages measure agreement on the disinformation narratives themselves.
AgreementReport agreement_report(const AnnotationMatrix& matrix,
                                 bool include_no_disinformation = false,
                                 ExecMode mode = ExecMode::Serial);

// ---------------------------------------------------------------------------
// Gold aggregation
// ---------------------------------------------------------------------------

struct AdjudicationItem {
    std::string item;
    std::vector<std::pair<std::string, int>> votes;  // code -> count, taxonomy order
    std::string reason;
};

struct GoldAggregation {
    int threshold = 0;
    int panel_size = 0;
    std::map<std::string, std::vector<NarrativeLabel>> gold;
    std::vector<AdjudicationItem> queue;
    double threshold_pass_rate = 0.0;  // items with a valid gold set / all items
    double unanimous_rate = 0.0;       // items where all annotator label sets match
};

/// Majority vote: a label enters gold when >= threshold annotators assigned
/// it. Items with an empty result, or with 0_0 thresholded next to another
/// label, go to the adjudication queue with their vote tallies.
GoldAggregation aggregate_gold(const AnnotationMatrix& matrix, int threshold,
                               int panel_size);

}  // namespace facteval
