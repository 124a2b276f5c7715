#include "facteval/retrieval_metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace facteval {

double recall_at_k(const std::vector<std::string>& ranked, const EvidencePool& pool, int k) {
    if (k <= 0) throw std::invalid_argument("recall_at_k: k must be positive");
    if (pool.evidentiary.empty())
        throw std::logic_error("recall_at_k: claim has no evidentiary gold");
    std::size_t limit = std::min(ranked.size(), static_cast<std::size_t>(k));
    int hits = 0;
    for (std::size_t i = 0; i < limit; ++i)
        if (pool.evidentiary_ids.count(ranked[i])) ++hits;
    return static_cast<double>(hits) / static_cast<double>(pool.evidentiary.size());
}

BprefCounters bpref_counters(const std::vector<std::string>& ranked,
                             const EvidencePool& pool) {
    BprefCounters counters;
    counters.relevant_total = static_cast<int>(pool.evidentiary.size());
    const int r_total = counters.relevant_total;
    int nonrelevant_above = 0;  // judged non-relevant seen so far, capped at R
    for (const auto& abstract_id : ranked) {
        if (pool.evidentiary_ids.count(abstract_id)) {
            counters.n_above.emplace_back(abstract_id, nonrelevant_above);
        } else if (pool.nei_ids.count(abstract_id)) {
            if (nonrelevant_above < r_total) ++nonrelevant_above;
        }
        // unjudged documents contribute nothing
    }
    return counters;
}

double bpref(const std::vector<std::string>& ranked, const EvidencePool& pool) {
    if (pool.evidentiary.empty()) throw std::logic_error("bpref: claim has no evidentiary gold");
    BprefCounters counters = bpref_counters(ranked, pool);
    const double r_total = static_cast<double>(counters.relevant_total);
    double sum = 0.0;
    for (const auto& [abstract_id, n_above] : counters.n_above)
        sum += 1.0 - static_cast<double>(n_above) / r_total;
    return sum / r_total;
}

double score_task11(double recall_at_5_aggregate, double bpref_aggregate) {
    return (recall_at_5_aggregate + bpref_aggregate) / 2.0;
}

RetrievalScoreReport score_retrieval(const RetrievalSubmission& submission,
                                     const GoldSet& gold, const std::vector<int>& ks,
                                     ExecMode mode) {
    RetrievalScoreReport report;
    report.ks = ks;
    for (int k : ks)
        if (k <= 0) throw std::invalid_argument("score_retrieval: k must be positive");

    // Evaluated claims: those with at least one evidentiary gold abstract.
    std::vector<const EvidencePool*> evaluated;
    for (const auto& [claim_id, pool] : gold.pools()) {
        if (pool.has_evidentiary())
            evaluated.push_back(&pool);
        else
            ++report.skipped_no_evidentiary;
    }

    report.per_claim.resize(evaluated.size());
    for_each_index(evaluated.size(), mode, [&](std::size_t i) {
        const EvidencePool& pool = *evaluated[i];
        ClaimRetrievalScore& score = report.per_claim[i];
        score.claim_id = pool.claim_id;
        const ClaimRanking* ranking = submission.find(pool.claim_id);
        std::vector<std::string> ranked;
        if (ranking) {
            ranked.reserve(ranking->ranked.size());
            for (const auto& entry : ranking->ranked) ranked.push_back(entry.abstract_id);
        } else {
            score.submitted = false;
        }
        score.empty_ranking = ranked.empty();
        for (int k : report.ks) score.recall_at[k] = recall_at_k(ranked, pool, k);
        score.bpref = ranked.empty() ? 0.0 : bpref(ranked, pool);
    });

    // Fixed-order reduction (per_claim is already sorted: pools() is ordered).
    for (int k : report.ks) report.aggregate_recall[k] = 0.0;
    for (const auto& score : report.per_claim) {
        for (int k : report.ks) report.aggregate_recall[k] += score.recall_at.at(k);
        report.aggregate_bpref += score.bpref;
        if (!score.submitted) report.unsubmitted.push_back(score.claim_id);
    }
    report.evaluated_claims = report.per_claim.size();
    if (report.evaluated_claims > 0) {
        for (int k : report.ks)
            report.aggregate_recall[k] /= static_cast<double>(report.evaluated_claims);
        report.aggregate_bpref /= static_cast<double>(report.evaluated_claims);
    }
    if (report.aggregate_recall.count(5))
        report.score_1_1 = score_task11(report.aggregate_recall.at(5), report.aggregate_bpref);
    return report;
}

}  // namespace facteval
