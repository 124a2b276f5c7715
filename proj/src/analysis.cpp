#include "facteval/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "facteval/retrieval_metrics.hpp"

namespace facteval {

std::string_view difficulty_bucket_name(DifficultyBucket bucket) {
    switch (bucket) {
        case DifficultyBucket::Hard: return "hard";
        case DifficultyBucket::Mid: return "mid";
        case DifficultyBucket::Easy: return "easy";
    }
    return "";
}

namespace {

DifficultyBucket bucket_for(double mean) {
    if (mean == 0.0) return DifficultyBucket::Hard;
    if (mean >= 0.5) return DifficultyBucket::Easy;
    return DifficultyBucket::Mid;
}

double claim_recall_at_5(const RetrievalSubmission& submission, const EvidencePool& pool) {
    const ClaimRanking* ranking = submission.find(pool.claim_id);
    if (!ranking) return 0.0;
    std::vector<std::string> ranked;
    ranked.reserve(ranking->ranked.size());
    for (const auto& entry : ranking->ranked) ranked.push_back(entry.abstract_id);
    return recall_at_k(ranked, pool, 5);
}

}  // namespace

DifficultyProfile difficulty_profile(const std::vector<const RetrievalSubmission*>& submissions,
                                     const GoldSet& gold) {
    if (submissions.empty())
        throw std::invalid_argument("difficulty_profile: need at least one submission");
    DifficultyProfile profile;
    profile.submissions = submissions.size();
    for (const auto& [claim_id, pool] : gold.pools()) {
        if (!pool.has_evidentiary()) continue;
        double sum = 0.0;
        for (const auto* submission : submissions) sum += claim_recall_at_5(*submission, pool);
        ClaimDifficulty entry;
        entry.claim_id = claim_id;
        entry.mean_recall_at_5 = sum / static_cast<double>(submissions.size());
        entry.bucket = bucket_for(entry.mean_recall_at_5);
        switch (entry.bucket) {
            case DifficultyBucket::Hard: ++profile.hard_count; break;
            case DifficultyBucket::Mid: ++profile.mid_count; break;
            case DifficultyBucket::Easy: ++profile.easy_count; break;
        }
        profile.claims.push_back(std::move(entry));
    }
    std::sort(profile.claims.begin(), profile.claims.end(),
              [](const ClaimDifficulty& a, const ClaimDifficulty& b) {
                  if (a.mean_recall_at_5 != b.mean_recall_at_5)
                      return a.mean_recall_at_5 < b.mean_recall_at_5;
                  return a.claim_id < b.claim_id;
              });
    return profile;
}

ConfusionMatrix confusion_matrix(const std::vector<PairPrediction>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("confusion_matrix: no pairs");
    ConfusionMatrix matrix;
    matrix.total = pairs.size();
    for (const auto& pair : pairs)
        matrix.counts[verdict_index(pair.gold)][verdict_index(pair.predicted)] += 1;
    for (int row = 0; row < 3; ++row) {
        std::size_t support = 0;
        for (int col = 0; col < 3; ++col) support += matrix.counts[row][col];
        if (support == 0) {
            matrix.zero_support_rows[row] = true;
            continue;
        }
        for (int col = 0; col < 3; ++col)
            matrix.row_normalized[row][col] =
                static_cast<double>(matrix.counts[row][col]) / static_cast<double>(support);
    }
    return matrix;
}

std::string_view narrative_match_name(NarrativeMatch match) {
    switch (match) {
        case NarrativeMatch::Exact: return "exact";
        case NarrativeMatch::Partial: return "partial";
        case NarrativeMatch::Wrong: return "wrong";
    }
    return "";
}

NarrativeMatchResult narrative_match(const std::vector<NarrativeLabel>& gold,
                                     const std::vector<NarrativeLabel>& predicted) {
    NarrativeMatchResult result;
    result.cardinality_delta =
        static_cast<int>(predicted.size()) - static_cast<int>(gold.size());
    result.under_predicted = predicted.size() < gold.size();
    result.over_predicted = predicted.size() > gold.size();

    std::set<NarrativeLabel> gold_set(gold.begin(), gold.end());
    std::set<NarrativeLabel> pred_set(predicted.begin(), predicted.end());
    if (gold_set == pred_set) {
        result.match = NarrativeMatch::Exact;
        return result;
    }
    std::set<int> gold_groups;
    for (const auto& label : gold) gold_groups.insert(label.group);
    bool any_group_hit = false;
    for (const auto& label : predicted)
        if (gold_groups.count(label.group)) {
            any_group_hit = true;
            break;
        }
    result.match = any_group_hit ? NarrativeMatch::Partial : NarrativeMatch::Wrong;
    return result;
}

NarrativeMatchReport narrative_match_report(const NarrativeSet& gold,
                                            const NarrativeSet& predictions) {
    NarrativeMatchReport report;
    std::map<std::string, std::size_t> false_labels;  // code -> count

    std::vector<const NarrativeAssignment*> sorted;
    for (const auto& assignment : gold.assignments()) sorted.push_back(&assignment);
    std::sort(sorted.begin(), sorted.end(),
              [](const NarrativeAssignment* a, const NarrativeAssignment* b) {
                  return a->claim_id < b->claim_id;
              });

    for (const auto* gold_assignment : sorted) {
        const NarrativeAssignment* predicted = predictions.find(gold_assignment->claim_id);
        static const std::vector<NarrativeLabel> kEmpty;
        const auto& pred_labels = predicted ? predicted->labels : kEmpty;

        ClaimNarrativeMatch entry;
        entry.claim_id = gold_assignment->claim_id;
        entry.submitted = predicted != nullptr;
        entry.result = narrative_match(gold_assignment->labels, pred_labels);
        switch (entry.result.match) {
            case NarrativeMatch::Exact: ++report.exact; break;
            case NarrativeMatch::Partial: ++report.partial; break;
            case NarrativeMatch::Wrong: ++report.wrong; break;
        }
        if (entry.result.under_predicted) ++report.under_predicted;
        if (entry.result.over_predicted) ++report.over_predicted;
        for (const auto& label : pred_labels)
            if (std::find(gold_assignment->labels.begin(), gold_assignment->labels.end(),
                          label) == gold_assignment->labels.end())
                false_labels[label.code()] += 1;
        report.per_claim.push_back(std::move(entry));
    }

    // Most frequent false prediction; ties resolved by taxonomy order.
    for (const auto& label : narrative_label_order()) {
        auto it = false_labels.find(label.code());
        if (it == false_labels.end()) continue;
        if (it->second > report.most_frequent_false_count) {
            report.most_frequent_false_count = it->second;
            report.most_frequent_false_label = it->first;
        }
    }
    return report;
}

std::vector<GroupRefutationAccuracy> refutation_by_group(
    const std::vector<PairPrediction>& pairs, const NarrativeSet& narrative_gold) {
    std::vector<GroupRefutationAccuracy> groups(kNarrativeGroupCount);
    for (int g = 0; g < kNarrativeGroupCount; ++g) groups[g].group = g;

    for (const auto& pair : pairs) {
        if (pair.gold != VerdictLabel::Refutes) continue;
        const NarrativeAssignment* assignment = narrative_gold.find(pair.claim_id);
        if (!assignment) continue;  // no narrative gold for this claim
        std::set<int> memberships;
        for (const auto& label : assignment->labels) memberships.insert(label.group);
        for (int g : memberships) {
            ++groups[g].pairs;
            if (pair.predicted == VerdictLabel::Refutes) ++groups[g].correct;
        }
    }
    for (auto& group : groups)
        if (group.pairs > 0)
            group.accuracy =
                static_cast<double>(group.correct) / static_cast<double>(group.pairs);
    return groups;
}

std::vector<GroupRecall> recall_by_group(const RetrievalSubmission& submission,
                                         const GoldSet& gold,
                                         const NarrativeSet& narrative_gold) {
    std::vector<GroupRecall> groups(kNarrativeGroupCount);
    std::vector<double> sums(kNarrativeGroupCount, 0.0);
    for (int g = 0; g < kNarrativeGroupCount; ++g) groups[g].group = g;

    for (const auto& [claim_id, pool] : gold.pools()) {
        if (!pool.has_evidentiary()) continue;
        const NarrativeAssignment* assignment = narrative_gold.find(claim_id);
        if (!assignment) continue;
        double r5 = claim_recall_at_5(submission, pool);
        std::set<int> memberships;
        for (const auto& label : assignment->labels) memberships.insert(label.group);
        for (int g : memberships) {
            ++groups[g].claims;
            sums[g] += r5;
        }
    }
    for (int g = 0; g < kNarrativeGroupCount; ++g)
        if (groups[g].claims > 0)
            groups[g].mean_recall_at_5 = sums[g] / static_cast<double>(groups[g].claims);
    return groups;
}

}  // namespace facteval
