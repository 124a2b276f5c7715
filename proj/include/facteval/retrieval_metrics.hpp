#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "facteval/corpus.hpp"
#include "facteval/parallel.hpp"

namespace facteval {

/// Intermediate Bpref state, exposed for inspection: R and, for every judged
/// relevant document that was retrieved, the count of judged non-relevant
/// documents ranked above it (capped at R).
struct BprefCounters {
    int relevant_total = 0;  // R
    std::vector<std::pair<std::string, int>> n_above;  // (abstract_id, count)
};

/// |top-k of `ranked` that are evidentiary| / |evidentiary|.
/// Requires a non-empty evidentiary pool and k >= 1.
double recall_at_k(const std::vector<std::string>& ranked, const EvidencePool& pool, int k);

BprefCounters bpref_counters(const std::vector<std::string>& ranked,
                             const EvidencePool& pool);

/// Binary preference over incomplete judgments: (1/R) * sum over retrieved
/// judged-relevant docs of (1 - n_above/R). Judged non-relevant = gold NEI
/// for this claim; unjudged documents contribute nothing.
/// Requires a non-empty evidentiary pool.
double bpref(const std::vector<std::string>& ranked, const EvidencePool& pool);

/// Composite ranking score: mean of the macro-averaged Recall@5 and Bpref.
double score_task11(double recall_at_5_aggregate, double bpref_aggregate);

struct ClaimRetrievalScore {
    std::string claim_id;
    std::map<int, double> recall_at;
    double bpref = 0.0;
    bool submitted = true;
    bool empty_ranking = false;
};

struct RetrievalScoreReport {
    std::vector<int> ks;
    std::vector<ClaimRetrievalScore> per_claim;  // sorted by claim_id
    std::map<int, double> aggregate_recall;      // unweighted means
    double aggregate_bpref = 0.0;
    std::optional<double> score_1_1;             // present when 5 is among ks
    std::size_t evaluated_claims = 0;
    std::size_t skipped_no_evidentiary = 0;      // gold-only-NEI claims, not scored
    std::vector<std::string> unsubmitted;        // evaluated but absent from the file
};

/// Scores every claim that has evidentiary gold. Unsubmitted claims score
/// zero on all metrics. Aggregates are macro means over evaluated claims,
/// summed in sorted claim order for bitwise determinism; the parallel mode
/// only distributes the per-claim kernel.
RetrievalScoreReport score_retrieval(const RetrievalSubmission& submission,
                                     const GoldSet& gold,
                                     const std::vector<int>& ks = {2, 5},
                                     ExecMode mode = ExecMode::Serial);

}  // namespace facteval
