#pragma once

#include <optional>
#include <string>
#include <vector>

#include "facteval/analysis.hpp"
#include "facteval/ev2r.hpp"
#include "facteval/iaa.hpp"
#include "facteval/narrative_metrics.hpp"
#include "facteval/retrieval_metrics.hpp"
#include "facteval/verification_metrics.hpp"

namespace facteval {

/// Echoed verbatim into every report: the resolved configuration and a
/// content hash per input file. No timestamps — reports are byte-stable.
struct RunProvenance {
    std::vector<std::pair<std::string, std::string>> config;  // key -> value
    std::vector<std::pair<std::string, std::string>> inputs;  // role:path -> hash

    void add_config(std::string key, std::string value);
    void add_input(const std::string& role, const std::string& path);  // hashes the file
};

// All render_* functions return complete file contents (JSON or text).
// Metric values are serialized with 6 decimal places; the text renderings
// display 3.

std::string render_validation_report(const IssueList& issues, const RunProvenance& run);

std::string render_retrieval_report(const RetrievalScoreReport& report,
                                    const RunProvenance& run);

std::string render_verification_report(const VerificationReport& report,
                                       const CollectedPairs& pairs, const RunProvenance& run);

std::string render_narrative_report(const NarrativeReport& report,
                                    const std::vector<std::string>& unsubmitted,
                                    const RunProvenance& run);

std::string render_ev2r_summary(const Ev2rEvaluation& evaluation, const RunProvenance& run);
/// Full per-pair audit as one record per line.
std::string render_ev2r_audit(const Ev2rEvaluation& evaluation);

std::string render_agreement_report(const AgreementReport& report,
                                    const GoldAggregation& aggregation,
                                    const RunProvenance& run);
/// Plain-text table: Label, Narrative, N, Prev., alpha, kappa, PA.
std::string render_agreement_table(const AgreementReport& report);

std::string render_difficulty_profile(const DifficultyProfile& profile,
                                      const RunProvenance& run);
/// x/y series for external plotting: claim index (ascending difficulty) vs
/// mean Recall@5.
std::string render_difficulty_series(const DifficultyProfile& profile);

std::string render_confusion_report(const ConfusionMatrix& matrix, const RunProvenance& run);

std::string render_narrative_match_report(const NarrativeMatchReport& report,
                                          const RunProvenance& run);

/// Exact/partial/wrong rates per system plus the pooled figures over all
/// (system, claim) pairs; the two averaging conventions can disagree, so both
/// are reported.
std::string render_narrative_match_pooled(
    const std::vector<std::pair<std::string, NarrativeMatchReport>>& reports,
    const RunProvenance& run);

std::string render_refutation_by_group(const std::vector<GroupRefutationAccuracy>& groups,
                                       const RunProvenance& run);

std::string render_recall_by_group(const std::vector<GroupRecall>& groups,
                                   const RunProvenance& run);

// ---------------------------------------------------------------------------
// Leaderboards
// ---------------------------------------------------------------------------

struct Task1LeaderboardRow {
    std::string team;
    std::optional<double> recall_at_2;
    std::optional<double> recall_at_5;
    std::optional<double> bpref;
    std::optional<double> score_1_1;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
    std::optional<double> score_1_2;
};

struct Task2LeaderboardRow {
    std::string team;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    double micro_f1 = 0.0;
    double weighted_f1 = 0.0;
};

/// Sorts by the ranking score descending (Score 1.1 when present, else
/// Score 1.2), ties broken by team name.
void sort_task1_leaderboard(std::vector<Task1LeaderboardRow>& rows);
/// Sorts by macro F1 descending, ties broken by team name.
void sort_task2_leaderboard(std::vector<Task2LeaderboardRow>& rows);

std::string render_task1_leaderboard(const std::vector<Task1LeaderboardRow>& rows,
                                     const RunProvenance& run);
std::string render_task2_leaderboard(const std::vector<Task2LeaderboardRow>& rows,
                                     const RunProvenance& run);
std::string render_task1_leaderboard_text(const std::vector<Task1LeaderboardRow>& rows);
std::string render_task2_leaderboard_text(const std::vector<Task2LeaderboardRow>& rows);

}  // namespace facteval
