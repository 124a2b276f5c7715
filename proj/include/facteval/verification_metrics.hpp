#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "facteval/corpus.hpp"

namespace facteval {

/// A retrieved pair that exists in the gold annotations, ready for scoring.
/// Unjudged pairs never enter this type.
struct PairPrediction {
    std::string claim_id;
    std::string abstract_id;
    VerdictLabel gold = VerdictLabel::NEI;
    VerdictLabel predicted = VerdictLabel::NEI;
    bool predicted_missing = false;  // no label submitted; scored as NEI and flagged
};

/// A retrieved pair with no gold judgment; routed to the Ev2R evaluation.
struct UnjudgedRetrieved {
    std::string claim_id;
    std::string abstract_id;
    std::optional<VerdictLabel> predicted;
};

struct CollectedPairs {
    std::vector<PairPrediction> judged;      // sorted by (claim_id, abstract_id)
    std::vector<UnjudgedRetrieved> unjudged; // submission rank order within claim
    std::size_t missing_label_count = 0;
};

/// Splits a submission's retrieved pairs into gold-judged pairs (scored here)
/// and unjudged pairs (scored by the Ev2R protocol). Judged pairs submitted
/// without a label count as NEI predictions and are flagged.
CollectedPairs collect_judged_pairs(const RetrievalSubmission& submission,
                                    const GoldSet& gold);

struct LabelPRF {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t support = 0;        // gold count
    bool zero_division = false;     // any 0/0 resolved to 0
};

struct VerificationReport {
    double weighted_precision = 0.0;
    double weighted_recall = 0.0;
    double weighted_f1 = 0.0;
    std::array<LabelPRF, 3> per_label;  // fixed order: Supports, Refutes, NEI
    std::size_t judged_pairs = 0;
    std::size_t missing_label_pairs = 0;
    // rows = gold, columns = predicted, fixed (Supports, Refutes, NEI) order
    std::array<std::array<std::size_t, 3>, 3> confusion{};
    std::optional<double> score_1_2;
};

/// Per-label precision/recall/F1 with the 0/0 -> 0 convention, aggregated
/// with gold-label supports as weights. Throws std::invalid_argument on an
/// empty pair list.
VerificationReport weighted_prf(const std::vector<PairPrediction>& pairs);

/// Composite verification score: weighted F1 plus the aggregate Recall@5,
/// range [0, 2].
double score_task12(double f1_weighted, double recall_at_5_aggregate);

}  // namespace facteval
