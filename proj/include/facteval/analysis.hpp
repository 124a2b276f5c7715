#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "facteval/corpus.hpp"
#include "facteval/verification_metrics.hpp"

namespace facteval {

// ---------------------------------------------------------------------------
// Retrieval difficulty
// ---------------------------------------------------------------------------

enum class DifficultyBucket { Hard, Mid, Easy };  // ==0, (0,0.5), >=0.5

std::string_view difficulty_bucket_name(DifficultyBucket bucket);

struct ClaimDifficulty {
    std::string claim_id;
    double mean_recall_at_5 = 0.0;  // across submissions; unsubmitted scores 0
    DifficultyBucket bucket = DifficultyBucket::Hard;
};

struct DifficultyProfile {
    std::vector<ClaimDifficulty> claims;  // ascending by mean R@5, ties by claim_id
    std::size_t hard_count = 0;
    std::size_t mid_count = 0;
    std::size_t easy_count = 0;
    std::size_t submissions = 0;
};

/// Per-claim mean Recall@5 across submissions, over claims with evidentiary
/// gold. Requires at least one submission.
DifficultyProfile difficulty_profile(const std::vector<const RetrievalSubmission*>& submissions,
                                     const GoldSet& gold);

// ---------------------------------------------------------------------------
// Verification confusion
// ---------------------------------------------------------------------------

struct ConfusionMatrix {
    // rows = gold, columns = predicted, fixed (Supports, Refutes, NEI) order
    std::array<std::array<std::size_t, 3>, 3> counts{};
    std::array<std::array<double, 3>, 3> row_normalized{};
    std::array<bool, 3> zero_support_rows{};
    std::size_t total = 0;
};

/// Counts plus row-normalized fractions (rows with zero support stay zero and
/// are flagged). Throws std::invalid_argument on an empty pair list.
ConfusionMatrix confusion_matrix(const std::vector<PairPrediction>& pairs);

// ---------------------------------------------------------------------------
// Narrative match breakdown
// ---------------------------------------------------------------------------

enum class NarrativeMatch { Exact, Partial, Wrong };

std::string_view narrative_match_name(NarrativeMatch match);

struct NarrativeMatchResult {
    NarrativeMatch match = NarrativeMatch::Wrong;
    int cardinality_delta = 0;  // |pred| - |gold|
    bool under_predicted = false;
    bool over_predicted = false;
};

/// Total, mutually exclusive classification: exact = identical sets; wrong =
/// no predicted label shares a top-level group with gold; partial = the rest
/// (some prediction lands in a correct group, typically with the wrong
/// sub-label; strict subsets land here too and carry the under-predicted flag).
NarrativeMatchResult narrative_match(const std::vector<NarrativeLabel>& gold,
                                     const std::vector<NarrativeLabel>& predicted);

struct ClaimNarrativeMatch {
    std::string claim_id;
    NarrativeMatchResult result;
    bool submitted = true;
};

struct NarrativeMatchReport {
    std::vector<ClaimNarrativeMatch> per_claim;  // sorted by claim_id
    std::size_t exact = 0;
    std::size_t partial = 0;
    std::size_t wrong = 0;
    std::size_t under_predicted = 0;
    std::size_t over_predicted = 0;
    std::optional<std::string> most_frequent_false_label;
    std::size_t most_frequent_false_count = 0;
};

/// Classifies every gold claim; unsubmitted predictions count as empty sets
/// (always Wrong) and are flagged.
NarrativeMatchReport narrative_match_report(const NarrativeSet& gold,
                                            const NarrativeSet& predictions);

// ---------------------------------------------------------------------------
// Narrative-conditioned cross-task statistics. A claim contributes to every
// top-level group present in its narrative gold (multi-membership).
// ---------------------------------------------------------------------------

struct GroupRefutationAccuracy {
    int group = 0;
    std::size_t pairs = 0;    // gold-Refutes pairs of claims in this group
    std::size_t correct = 0;  // predicted Refutes
    std::optional<double> accuracy;
};

std::vector<GroupRefutationAccuracy> refutation_by_group(
    const std::vector<PairPrediction>& pairs, const NarrativeSet& narrative_gold);

struct GroupRecall {
    int group = 0;
    std::size_t claims = 0;  // N column
    std::optional<double> mean_recall_at_5;
};

std::vector<GroupRecall> recall_by_group(const RetrievalSubmission& submission,
                                         const GoldSet& gold,
                                         const NarrativeSet& narrative_gold);

}  // namespace facteval
