#include "facteval/verification_metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace facteval {

CollectedPairs collect_judged_pairs(const RetrievalSubmission& submission,
                                    const GoldSet& gold) {
    CollectedPairs out;
    for (const auto& ranking : submission.rankings()) {
        const EvidencePool* pool = gold.find(ranking.claim_id);
        for (const auto& entry : ranking.ranked) {
            if (pool && pool->is_judged(entry.abstract_id)) {
                auto gold_it =
                    std::find_if(pool->gold.begin(), pool->gold.end(), [&](const GoldJudgment& j) {
                        return j.abstract_id == entry.abstract_id;
                    });
                PairPrediction pair;
                pair.claim_id = ranking.claim_id;
                pair.abstract_id = entry.abstract_id;
                pair.gold = gold_it->label;
                if (entry.predicted) {
                    pair.predicted = *entry.predicted;
                } else {
                    pair.predicted = VerdictLabel::NEI;
                    pair.predicted_missing = true;
                    ++out.missing_label_count;
                }
                out.judged.push_back(std::move(pair));
            } else {
                out.unjudged.push_back({ranking.claim_id, entry.abstract_id, entry.predicted});
            }
        }
    }
    std::sort(out.judged.begin(), out.judged.end(),
              [](const PairPrediction& a, const PairPrediction& b) {
                  return std::tie(a.claim_id, a.abstract_id) < std::tie(b.claim_id, b.abstract_id);
              });
    std::sort(out.unjudged.begin(), out.unjudged.end(),
              [](const UnjudgedRetrieved& a, const UnjudgedRetrieved& b) {
                  return std::tie(a.claim_id, a.abstract_id) < std::tie(b.claim_id, b.abstract_id);
              });
    return out;
}

VerificationReport weighted_prf(const std::vector<PairPrediction>& pairs) {
    if (pairs.empty())
        throw std::invalid_argument("weighted_prf: no judged pairs to score");

    VerificationReport report;
    report.judged_pairs = pairs.size();
    for (const auto& pair : pairs) {
        report.confusion[verdict_index(pair.gold)][verdict_index(pair.predicted)] += 1;
        if (pair.predicted_missing) ++report.missing_label_pairs;
    }

    double weighted_p = 0.0, weighted_r = 0.0, weighted_f1 = 0.0;
    for (int label = 0; label < 3; ++label) {
        std::size_t tp = report.confusion[label][label];
        std::size_t gold_count = 0, predicted_count = 0;
        for (int other = 0; other < 3; ++other) {
            gold_count += report.confusion[label][other];
            predicted_count += report.confusion[other][label];
        }
        LabelPRF& prf = report.per_label[label];
        prf.support = gold_count;
        if (predicted_count == 0) {
            prf.precision = 0.0;
            prf.zero_division = true;
        } else {
            prf.precision = static_cast<double>(tp) / static_cast<double>(predicted_count);
        }
        if (gold_count == 0) {
            prf.recall = 0.0;
            prf.zero_division = true;
        } else {
            prf.recall = static_cast<double>(tp) / static_cast<double>(gold_count);
        }
        if (prf.precision + prf.recall == 0.0) {
            prf.f1 = 0.0;
            if (predicted_count > 0 || gold_count > 0) prf.zero_division = true;
        } else {
            prf.f1 = 2.0 * prf.precision * prf.recall / (prf.precision + prf.recall);
        }
        weighted_p += static_cast<double>(prf.support) * prf.precision;
        weighted_r += static_cast<double>(prf.support) * prf.recall;
        weighted_f1 += static_cast<double>(prf.support) * prf.f1;
    }
    const double total = static_cast<double>(pairs.size());
    report.weighted_precision = weighted_p / total;
    report.weighted_recall = weighted_r / total;
    report.weighted_f1 = weighted_f1 / total;
    return report;
}

double score_task12(double f1_weighted, double recall_at_5_aggregate) {
    return f1_weighted + recall_at_5_aggregate;
}

}  // namespace facteval
