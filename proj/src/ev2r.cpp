#include "facteval/ev2r.hpp"

#include <algorithm>
#include <stdexcept>

namespace facteval {

double ev2r_pair_score(double s_ref, double s_proxy, double ref_weight) {
    if (ref_weight < 0.0 || ref_weight > 1.0)
        throw std::invalid_argument("ev2r_pair_score: weight must be in [0,1]");
    return ref_weight * s_ref + (1.0 - ref_weight) * s_proxy;
}

std::optional<double> claim_ev2r(const std::vector<Ev2rRecord>& records) {
    if (records.empty()) return std::nullopt;
    double best = records.front().ev2r_pair;
    for (const auto& record : records) best = std::max(best, record.ev2r_pair);
    return best;
}

Ev2rScorer::Ev2rScorer(const Corpus& corpus, const GoldSet& gold, AtomicFactJudge& judge,
                       ProxyVerifier& verifier, ServiceCache* cache, Ev2rOptions options)
    : corpus_(corpus), gold_(gold), judge_(judge), verifier_(verifier), cache_(cache),
      options_(options) {
    if (options_.ref_weight < 0.0 || options_.ref_weight > 1.0)
        throw std::invalid_argument("Ev2rScorer: ref_weight must be in [0,1]");
}

const std::string& Ev2rScorer::claim_text(const std::string& claim_id) const {
    const Claim* claim = corpus_.find_claim(claim_id);
    if (!claim) throw std::logic_error("unknown claim id: " + claim_id);
    return claim->text;
}

const std::string& Ev2rScorer::abstract_text(const std::string& abstract_id) const {
    const Abstract* abstract = corpus_.find_abstract(abstract_id);
    if (!abstract) throw std::logic_error("unknown abstract id: " + abstract_id);
    return abstract->text;
}

JudgeAlignment Ev2rScorer::cached_align(const std::string& claim_id, const GoldJudgment& gold,
                                        const std::string& retrieved_abstract_id) {
    AlignmentKey key{claim_id,
                     gold.abstract_id,
                     retrieved_abstract_id,
                     claim_text(claim_id),
                     abstract_text(gold.abstract_id),
                     abstract_text(retrieved_abstract_id),
                     judge_.id(),
                     judge_.version()};
    if (cache_) {
        if (auto hit = cache_->find_alignment(key)) return *hit;
    }
    JudgeAlignment alignment =
        judge_.align(key.claim_text, key.gold_text, key.retrieved_text);
    ++judge_calls_;
    if (cache_) cache_->store_alignment(key, alignment);
    return alignment;
}

VerifierDistribution Ev2rScorer::cached_verify(const std::string& claim_id,
                                               const std::string& retrieved_abstract_id) {
    VerifyKey key{claim_id,
                  retrieved_abstract_id,
                  claim_text(claim_id),
                  abstract_text(retrieved_abstract_id),
                  verifier_.id(),
                  verifier_.version()};
    if (cache_) {
        if (auto hit = cache_->find_verdict(key)) return *hit;
    }
    VerifierDistribution distribution = verifier_.verify(key.claim_text, key.evidence_text);
    ++verifier_calls_;
    if (cache_) cache_->store_verdict(key, distribution);
    return distribution;
}

BestAlignedGold Ev2rScorer::best_aligned_gold(const std::string& claim_id,
                                              const std::string& retrieved_abstract_id) {
    const EvidencePool* pool = gold_.find(claim_id);
    if (!pool || pool->gold.empty())
        throw std::logic_error("best_aligned_gold: claim has no gold judgments");
    const auto& candidates = options_.evidentiary_refs_only ? pool->evidentiary : pool->gold;
    if (candidates.empty())
        throw std::logic_error("best_aligned_gold: no reference candidates for claim");

    BestAlignedGold best;
    bool first = true;
    for (const auto& gold_judgment : candidates) {
        JudgeAlignment alignment = cached_align(claim_id, gold_judgment, retrieved_abstract_id);
        // Gold-file order; strictly-greater keeps the first maximizer on ties.
        if (first || alignment.f1 > best.s_ref) {
            best.gold_abstract_id = gold_judgment.abstract_id;
            best.gold_label = gold_judgment.label;
            best.s_ref = alignment.f1;
            first = false;
        }
    }
    return best;
}

double Ev2rScorer::proxy_score(const std::string& claim_id,
                               const std::string& retrieved_abstract_id, VerdictLabel y_star) {
    return cached_verify(claim_id, retrieved_abstract_id).probability_of(y_star);
}

Ev2rScorer::VerificationScore Ev2rScorer::verification_score(
    const std::string& claim_id, const std::string& retrieved_abstract_id,
    VerdictLabel predicted, VerdictLabel y_star) {
    VerificationScore score;
    score.s_conf = cached_verify(claim_id, retrieved_abstract_id).probability_of(predicted);
    score.s_cons = predicted == y_star ? 1 : 0;
    score.s_ver = (score.s_conf + static_cast<double>(score.s_cons)) / 2.0;
    return score;
}

Ev2rEvaluation Ev2rScorer::evaluate(const RetrievalSubmission& submission) {
    Ev2rEvaluation evaluation;
    evaluation.summary.ref_weight = options_.ref_weight;

    for (const auto& [claim_id, pool] : gold_.pools()) {
        if (pool.has_evidentiary())
            ++evaluation.summary.claims_with_non_nei_gold;
        else
            ++evaluation.summary.claims_only_nei_gold;
    }

    // Work items: claims with gold, in sorted order (pools() is ordered).
    struct WorkItem {
        const EvidencePool* pool;
        std::vector<RetrievedEntry> unannotated;
    };
    std::vector<WorkItem> work;
    for (const auto& [claim_id, pool] : gold_.pools()) {
        const ClaimRanking* ranking = submission.find(claim_id);
        WorkItem item{&pool, {}};
        if (ranking)
            for (const auto& entry : ranking->ranked)
                if (!pool.is_judged(entry.abstract_id)) item.unannotated.push_back(entry);
        work.push_back(std::move(item));
    }

    std::vector<Ev2rClaimResult> results(work.size());
    std::vector<std::vector<Ev2rFailure>> failures(work.size());
    for_each_index(
        work.size(), exec_mode_for_parallelism(options_.parallelism),
        [&](std::size_t i) {
            const WorkItem& item = work[i];
            Ev2rClaimResult& result = results[i];
            result.claim_id = item.pool->claim_id;
            result.has_non_nei_gold = item.pool->has_evidentiary();
            result.unannotated_retrieved = item.unannotated.size();
            // Claims linked exclusively to NEI gold provide no evidential
            // reference and are not evaluated.
            if (!result.has_non_nei_gold) return;
            for (const auto& entry : item.unannotated) {
                try {
                    BestAlignedGold best = best_aligned_gold(result.claim_id, entry.abstract_id);
                    Ev2rRecord record;
                    record.claim_id = result.claim_id;
                    record.abstract_id = entry.abstract_id;
                    record.best_gold_id = best.gold_abstract_id;
                    record.best_gold_label = best.gold_label;
                    record.s_ref = best.s_ref;
                    record.s_proxy =
                        proxy_score(result.claim_id, entry.abstract_id, best.gold_label);
                    record.ev2r_pair =
                        ev2r_pair_score(record.s_ref, record.s_proxy, options_.ref_weight);
                    if (entry.predicted) {
                        record.predicted_label = entry.predicted;
                        VerificationScore vs = verification_score(
                            result.claim_id, entry.abstract_id, *entry.predicted,
                            best.gold_label);
                        record.s_conf = vs.s_conf;
                        record.s_cons = vs.s_cons;
                        record.s_ver = vs.s_ver;
                    }
                    result.records.push_back(std::move(record));
                } catch (const ServiceError& e) {
                    failures[i].push_back(
                        {result.claim_id, entry.abstract_id, "align/verify", e.what()});
                }
            }
            result.claim_score = claim_ev2r(result.records);
        },
        options_.parallelism);

    // Fixed-order reduction over sorted claim ids.
    double score_sum = 0.0;
    double s_ver_sum = 0.0;
    std::size_t unannotated_sum = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        Ev2rClaimResult& result = results[i];
        for (auto& failure : failures[i]) evaluation.failures.push_back(std::move(failure));
        if (result.has_non_nei_gold && result.claim_score.has_value()) {
            ++evaluation.summary.evaluated_claims;
            score_sum += *result.claim_score;
            unannotated_sum += result.unannotated_retrieved;
            for (const auto& record : result.records)
                if (record.s_ver.has_value()) {
                    s_ver_sum += *record.s_ver;
                    ++evaluation.summary.s_ver_pairs;
                }
        }
        evaluation.claims.push_back(std::move(result));
    }
    evaluation.summary.failed_pairs = evaluation.failures.size();
    if (evaluation.summary.evaluated_claims > 0) {
        const double n = static_cast<double>(evaluation.summary.evaluated_claims);
        evaluation.summary.submission_score = score_sum / n;
        evaluation.summary.avg_unannotated_per_evaluated_claim =
            static_cast<double>(unannotated_sum) / n;
    }
    if (evaluation.summary.s_ver_pairs > 0)
        evaluation.summary.submission_s_ver =
            s_ver_sum / static_cast<double>(evaluation.summary.s_ver_pairs);

    std::sort(evaluation.failures.begin(), evaluation.failures.end(),
              [](const Ev2rFailure& a, const Ev2rFailure& b) {
                  return std::tie(a.claim_id, a.abstract_id) < std::tie(b.claim_id, b.abstract_id);
              });
    evaluation.judge_calls = judge_calls_.load();
    evaluation.verifier_calls = verifier_calls_.load();
    return evaluation;
}

}  // namespace facteval
