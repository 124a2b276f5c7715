#include "facteval/report.hpp"

#include <algorithm>
#include <cstdio>

#include "facteval/hash.hpp"
#include "facteval/jsonl.hpp"

namespace facteval {

namespace {

std::string display3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v == 0.0 ? 0.0 : v);
    return buf;
}

std::string display3(const std::optional<double>& v) {
    return v.has_value() ? display3(*v) : std::string("---");
}

void write_run_section(JsonWriter& w, const RunProvenance& run) {
    w.key("run").begin_object();
    w.key("config").begin_object();
    for (const auto& [key, value] : run.config) w.field(key, value);
    w.end_object();
    w.key("inputs").begin_object();
    for (const auto& [role, hash] : run.inputs) w.field(role, hash);
    w.end_object();
    w.end_object();
}

void write_prf(JsonWriter& w, const LabelPRF& prf) {
    w.begin_object()
        .field_metric("precision", prf.precision)
        .field_metric("recall", prf.recall)
        .field_metric("f1", prf.f1)
        .field("support", prf.support)
        .field("zero_division", prf.zero_division)
        .end_object();
}

}  // namespace

void RunProvenance::add_config(std::string key, std::string value) {
    config.emplace_back(std::move(key), std::move(value));
}

void RunProvenance::add_input(const std::string& role, const std::string& path) {
    inputs.emplace_back(role + ":" + path, hash_file(path));
}

std::string render_validation_report(const IssueList& issues, const RunProvenance& run) {
    JsonWriter w;
    w.begin_object();
    w.field("ok", !issues.has_errors());
    std::size_t errors = 0, warnings = 0;
    for (const auto& issue : issues.all())
        (issue.severity == ValidationIssue::Severity::Error ? errors : warnings) += 1;
    w.field("error_count", errors).field("warning_count", warnings);
    w.key("issues").begin_array();
    for (const auto& issue : issues.all()) {
        w.begin_object()
            .field("severity",
                   issue.severity == ValidationIssue::Severity::Error ? "error" : "warning")
            .field("file", issue.file)
            .field("line", static_cast<long long>(issue.line))
            .field("message", issue.message)
            .end_object();
    }
    w.end_array();
    write_run_section(w, run);
    w.end_object();
    return w.str() + "\n";
}

std::string render_retrieval_report(const RetrievalScoreReport& report,
                                    const RunProvenance& run) {
    JsonWriter w;
    w.begin_object();
    w.key("aggregate").begin_object();
    for (int k : report.ks)
        w.field_metric("recall_at_" + std::to_string(k), report.aggregate_recall.at(k));
    w.field_metric("bpref", report.aggregate_bpref);
    w.field_metric("score_1_1", report.score_1_1);
    w.end_object();
    w.field("evaluated_claims", report.evaluated_claims);
    w.field("skipped_no_evidentiary", report.skipped_no_evidentiary);
    w.key("unsubmitted").begin_array();
    for (const auto& id : report.unsubmitted) w.value(id);
    w.end_array();
    w.key("per_claim").begin_array();
    for (const auto& claim : report.per_claim) {
        w.begin_object().field("claim_id", claim.claim_id);
        for (int k : report.ks)
            w.field_metric("recall_at_" + std::to_string(k), claim.recall_at.at(k));
        w.field_metric("bpref", claim.bpref);
        w.field("submitted", claim.submitted);
        if (claim.empty_ranking) w.field("empty_ranking", true);
        w.end_object();
    }
    w.end_array();
    write_run_section(w, run);
    w.end_object();
    return w.str() + "\n";
}

std::string render_verification_report(const VerificationReport& report,
                                       const CollectedPairs& pairs, const RunProvenance& run) {
    JsonWriter w;
    w.begin_object();
    w.field_metric("weighted_precision", report.weighted_precision)
        .field_metric("weighted_recall", report.weighted_recall)
        .field_metric("weighted_f1", report.weighted_f1)
        .field_metric("score_1_2", report.score_1_2)
        .field("judged_pairs", report.judged_pairs)
        .field("missing_label_pairs", report.missing_label_pairs)
        .field("unjudged_pairs_routed_to_ev2r", pairs.unjudged.size());
    w.key("per_label").begin_object();
    for (int i = 0; i < 3; ++i) {
        w.key(verdict_name(kVerdictOrder[i]));
        write_prf(w, report.per_label[i]);
    }
    w.end_object();
    w.key("confusion").begin_array();
    for (int row = 0; row < 3; ++row) {
        w.begin_array();
        for (int col = 0; col < 3; ++col) w.value(report.confusion[row][col]);
        w.end_array();
    }
    w.end_array();
    w.key("confusion_label_order").begin_array();
    for (auto v : kVerdictOrder) w.value(verdict_short_name(v));
    w.end_array();
    write_run_section(w, run);
    w.end_object();
    return w.str() + "\n";
}

std::string render_narrative_report(const NarrativeReport& report,
                                    const std::vector<std::string>& unsubmitted,
                                    const RunProvenance& run) {
    JsonWriter w;
    w.begin_object();
    w.field("macro_label_universe", report.universe == MacroUniverse::AllLabels
                                        ? "all_labels"
                                        : "present_labels")
        .field_metric("macro_precision", report.macro_precision)
        .field_metric("macro_recall", report.macro_recall)
        .field_metric("macro_f1", report.macro_f1)
        .field_metric("macro_f1_all_labels", report.macro_f1_all_labels)
        .field_metric("macro_f1_present_labels", report.macro_f1_present_labels)
        .field_metric("micro_f1", report.micro_f1)
        .field_metric("weighted_f1", report.weighted_f1)
        .field("claims", report.claims);
    w.key("unsubmitted").begin_array();
    for (const auto& id : unsubmitted) w.value(id);
    w.end_array();
    w.key("per_label").begin_object();
    for (std::size_t j = 0; j < report.per_label.size(); ++j) {
        w.key(narrative_label_order()[j].code());
        write_prf(w, report.per_label[j]);
    }
    w.end_object();
    write_run_section(w, run);
    w.end_object();
    return w.str() + "\n";
}

std::string render_ev2r_summary(const Ev2rEvaluation& evaluation, const RunProvenance& run) {
    const Ev2rSummary& s = evaluation.summary;
    JsonWriter w;
    w.begin_object();
    w.field_metric("ev2r", s.submission_score)
        .field_metric("s_ver", s.submission_s_ver)
        .field("evaluated_claims", s.evaluated_claims)
        .field_metric("avg_unannotated_per_claim", s.avg_unannotated_per_evaluated_claim)
        .field("claims_with_non_nei_gold", s.claims_with_non_nei_gold)
        .field("claims_only_nei_gold", s.claims_only_nei_gold)
        .field("s_ver_pairs", s.s_ver_pairs)
        .field("failed_pairs", s.failed_pairs)
        .field_metric("ref_weight", s.ref_weight);
    w.key("failures").begin_array();
    for (const auto& failure : evaluation.failures) {
        w.begin_object()
            .field("claim_id", failure.claim_id)
            .field("abstract_id", failure.abstract_id)
            .field("stage", failure.stage)
            .field("message", failure.message)
            .end_object();
    }
    w.end_array();
    write_run_section(w, run);
    w.end_object();
    return w.str() + "\n";
}

std::string render_ev2r_audit(const Ev2rEvaluation& evaluation) {
    std::string out;
    for (const auto& claim : evaluation.claims) {
        for (const auto& record : claim.records) {
            JsonWriter w;
            w.begin_object()
                .field("claim_id", record.claim_id)
                .field("abstract_id", record.abstract_id)
                .field("best_gold_id", record.best_gold_id)
                .field("best_gold_label", verdict_name(record.best_gold_label))
                .field_metric("s_ref", record.s_ref)
                .field_metric("s_proxy", record.s_proxy)
                .field_metric("ev2r_pair", record.ev2r_pair);
            if (record.predicted_label)
                w.field("predicted_label", verdict_name(*record.predicted_label));
            if (record.s_conf) w.field_metric("s_conf", *record.s_conf);
            if (record.s_cons) w.field("s_cons", static_cast<long long>(*record.s_cons));
            if (record.s_ver) w.field_metric("s_ver", *record.s_ver);
            w.end_object();
            out += w.str();
            out += '\n';
        }
    }
    return out;
}

std::string render_agreement_report(const AgreementReport& report,
                                    const GoldAggregation& aggregation,
                                    const RunProvenance& run) {
    JsonWriter w;
    w.begin_object();
    w.field_metric("overall_alpha", report.overall_alpha)
        .field_metric("prevalence_weighted_alpha", report.prevalence_weighted_alpha)
        .field_metric("top_level_prevalence_weighted_alpha",
                      report.top_level_prevalence_weighted_alpha)
        .field("includes_no_disinformation", report.includes_no_disinformation);
    w.key("per_label").begin_object();
    for (const auto& row : report.per_label) {
        w.key(row.label.code())
            .begin_object()
            .field("narrative", narrative_description(row.label))
            .field("n", row.n)
            .field_metric("prevalence", row.prevalence)
            .field_metric("alpha", row.alpha)
            .field_metric("kappa", row.mean_pairwise_kappa)
            .field_metric("positive_agreement", row.positive_agreement)
            .end_object();
    }
    w.end_object();
    w.key("top_level").begin_object();
    for (const auto& row : report.top_level) {
        w.key(std::to_string(row.group))
            .begin_object()
            .field("narrative", narrative_group_description(row.group))
            .field("n", row.n)
            .field_metric("prevalence", row.prevalence)
            .field_metric("alpha", row.alpha)
            .end_object();
    }
    w.end_object();
    w.key("annotators").begin_array();
    for (const auto& annotator : report.annotators) w.value(annotator);
    w.end_array();
    w.key("pairwise_kappa").begin_array();
    for (const auto& row : report.pairwise_kappa_matrix) {
        w.begin_array();
        for (const auto& cell : row) w.metric(cell);
        w.end_array();
    }
    w.end_array();
    w.key("gold_aggregation").begin_object();
    w.field("threshold", static_cast<long long>(aggregation.threshold))
        .field("panel_size", static_cast<long long>(aggregation.panel_size))
        .field("items_with_gold", aggregation.gold.size())
        .field("adjudication_queue_size", aggregation.queue.size())
        .field_metric("threshold_pass_rate", aggregation.threshold_pass_rate)
        .field_metric("unanimous_rate", aggregation.unanimous_rate);
    w.key("gold").begin_object();
    for (const auto& [item, labels] : aggregation.gold) {
        w.key(item).begin_array();
        for (const auto& label : labels) w.value(label.code());
        w.end_array();
    }
    w.end_object();
    w.key("adjudication_queue").begin_array();
    for (const auto& queued : aggregation.queue) {
        w.begin_object().field("item", queued.item).field("reason", queued.reason);
        w.key("votes").begin_object();
        for (const auto& [code, count] : queued.votes)
            w.field(code, static_cast<long long>(count));
        w.end_object();
        w.end_object();
    }
    w.end_array();
    w.end_object();
    write_run_section(w, run);
    w.end_object();
    return w.str() + "\n";
}

std::string render_agreement_table(const AgreementReport& report) {
    std::string out = "Label  Narrative                                                      N   Prev.  alpha  kappa     PA\n";
    int current_group = -1;
    for (const auto& row : report.per_label) {
        if (row.label.group != current_group) {
            current_group = row.label.group;
            out += "-- " + std::to_string(current_group) + " --- " +
                   std::string(narrative_group_description(current_group)) + "\n";
        }
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-6s %-58s %5zu  %6s %6s %6s %6s\n",
                      row.label.code().c_str(),
                      std::string(narrative_description(row.label)).substr(0, 58).c_str(),
                      row.n, display3(row.prevalence).c_str(), display3(row.alpha).c_str(),
                      display3(row.mean_pairwise_kappa).c_str(),
                      display3(row.positive_agreement).c_str());
        out += buf;
    }
    return out;
}

std::string render_difficulty_profile(const DifficultyProfile& profile,
                                      const RunProvenance& run) {
    JsonWriter w;
    w.begin_object();
    w.field("submissions", profile.submissions)
        .field("hard_count", profile.hard_count)
        .field("mid_count", profile.mid_count)
        .field("easy_count", profile.easy_count);
    w.key("per_claim").begin_array();
    for (const auto& claim : profile.claims) {
        w.begin_object()
            .field("claim_id", claim.claim_id)
            .field_metric("mean_recall_at_5", claim.mean_recall_at_5)
            .field("bucket", difficulty_bucket_name(claim.bucket))
            .end_object();
    }
    w.end_array();
    write_run_section(w, run);
    w.end_object();
    return w.str() + "\n";
}

std::string render_difficulty_series(const DifficultyProfile& profile) {
    JsonWriter w;
    w.begin_object();
    w.key("x").begin_array();
    for (std::size_t i = 0; i < profile.claims.size(); ++i) w.value(i);
    w.end_array();
    w.key("y").begin_array();
    for (const auto& claim : profile.claims) w.metric(claim.mean_recall_at_5);
    w.end_array();
    w.key("bucket").begin_array();
    for (const auto& claim : profile.claims) w.value(difficulty_bucket_name(claim.bucket));
    w.end_array();
    w.end_object();
    return w.str() + "\n";
}

std::string render_confusion_report(const ConfusionMatrix& matrix, const RunProvenance& run) {
    JsonWriter w;
    w.begin_object();
    w.field("total_pairs", matrix.total);
    w.key("label_order").begin_array();
    for (auto v : kVerdictOrder) w.value(verdict_short_name(v));
    w.end_array();
    w.key("counts").begin_array();
    for (int row = 0; row < 3; ++row) {
        w.begin_array();
        for (int col = 0; col < 3; ++col) w.value(matrix.counts[row][col]);
        w.end_array();
    }
    w.end_array();
    w.key("row_normalized").begin_array();
    for (int row = 0; row < 3; ++row) {
        w.begin_array();
        for (int col = 0; col < 3; ++col) w.metric(matrix.row_normalized[row][col]);
        w.end_array();
    }
    w.end_array();
    w.key("zero_support_rows").begin_array();
    for (int row = 0; row < 3; ++row)
        if (matrix.zero_support_rows[row]) w.value(verdict_short_name(kVerdictOrder[row]));
    w.end_array();
    write_run_section(w, run);
    w.end_object();
    return w.str() + "\n";
}

std::string render_narrative_match_report(const NarrativeMatchReport& report,
                                          const RunProvenance& run) {
    const double total = static_cast<double>(report.per_claim.size());
    JsonWriter w;
    w.begin_object();
    w.field("claims", report.per_claim.size())
        .field("exact", report.exact)
        .field("partial", report.partial)
        .field("wrong", report.wrong);
    if (total > 0) {
        w.field_metric("exact_rate", static_cast<double>(report.exact) / total)
            .field_metric("partial_rate", static_cast<double>(report.partial) / total)
            .field_metric("wrong_rate", static_cast<double>(report.wrong) / total);
    }
    w.field("under_predicted", report.under_predicted)
        .field("over_predicted", report.over_predicted);
    if (report.most_frequent_false_label)
        w.field("most_frequent_false_label", *report.most_frequent_false_label)
            .field("most_frequent_false_count", report.most_frequent_false_count);
    w.key("per_claim").begin_array();
    for (const auto& claim : report.per_claim) {
        w.begin_object()
            .field("claim_id", claim.claim_id)
            .field("match", narrative_match_name(claim.result.match))
            .field("cardinality_delta", static_cast<long long>(claim.result.cardinality_delta))
            .field("submitted", claim.submitted)
            .end_object();
    }
    w.end_array();
    write_run_section(w, run);
    w.end_object();
    return w.str() + "\n";
}

std::string render_narrative_match_pooled(
    const std::vector<std::pair<std::string, NarrativeMatchReport>>& reports,
    const RunProvenance& run) {
    std::size_t exact = 0, partial = 0, wrong = 0, total = 0;
    double exact_rate_sum = 0.0;
    JsonWriter w;
    w.begin_object();
    w.key("per_system").begin_object();
    for (const auto& [team, report] : reports) {
        const double n = static_cast<double>(report.per_claim.size());
        exact += report.exact;
        partial += report.partial;
        wrong += report.wrong;
        total += report.per_claim.size();
        double exact_rate = n > 0 ? static_cast<double>(report.exact) / n : 0.0;
        exact_rate_sum += exact_rate;
        w.key(team)
            .begin_object()
            .field("claims", report.per_claim.size())
            .field_metric("exact_rate", exact_rate)
            .field_metric("partial_rate", n > 0 ? static_cast<double>(report.partial) / n : 0.0)
            .field_metric("wrong_rate", n > 0 ? static_cast<double>(report.wrong) / n : 0.0)
            .end_object();
    }
    w.end_object();
    const double pooled_n = static_cast<double>(total);
    w.key("pooled").begin_object();
    w.field("claims", total)
        .field_metric("exact_rate", pooled_n > 0 ? static_cast<double>(exact) / pooled_n : 0.0)
        .field_metric("partial_rate", pooled_n > 0 ? static_cast<double>(partial) / pooled_n : 0.0)
        .field_metric("wrong_rate", pooled_n > 0 ? static_cast<double>(wrong) / pooled_n : 0.0)
        .end_object();
    w.field_metric("macro_over_systems_exact_rate",
                   reports.empty() ? 0.0
                                   : exact_rate_sum / static_cast<double>(reports.size()));
    write_run_section(w, run);
    w.end_object();
    return w.str() + "\n";
}

std::string render_refutation_by_group(const std::vector<GroupRefutationAccuracy>& groups,
                                       const RunProvenance& run) {
    JsonWriter w;
    w.begin_object();
    w.key("groups").begin_array();
    for (const auto& group : groups) {
        w.begin_object()
            .field("group", static_cast<long long>(group.group))
            .field("narrative", narrative_group_description(group.group))
            .field("pairs", group.pairs)
            .field("correct", group.correct)
            .field_metric("accuracy", group.accuracy)
            .end_object();
    }
    w.end_array();
    write_run_section(w, run);
    w.end_object();
    return w.str() + "\n";
}

std::string render_recall_by_group(const std::vector<GroupRecall>& groups,
                                   const RunProvenance& run) {
    JsonWriter w;
    w.begin_object();
    w.key("groups").begin_array();
    for (const auto& group : groups) {
        w.begin_object()
            .field("group", static_cast<long long>(group.group))
            .field("narrative", narrative_group_description(group.group))
            .field("n", group.claims)
            .field_metric("recall_at_5", group.mean_recall_at_5)
            .end_object();
    }
    w.end_array();
    write_run_section(w, run);
    w.end_object();
    return w.str() + "\n";
}

// --- leaderboards ------------------------------------------------------------------

void sort_task1_leaderboard(std::vector<Task1LeaderboardRow>& rows) {
    std::sort(rows.begin(), rows.end(),
              [](const Task1LeaderboardRow& a, const Task1LeaderboardRow& b) {
                  double sa = a.score_1_1.value_or(a.score_1_2.value_or(0.0));
                  double sb = b.score_1_1.value_or(b.score_1_2.value_or(0.0));
                  if (sa != sb) return sa > sb;
                  return a.team < b.team;
              });
}

void sort_task2_leaderboard(std::vector<Task2LeaderboardRow>& rows) {
    std::sort(rows.begin(), rows.end(),
              [](const Task2LeaderboardRow& a, const Task2LeaderboardRow& b) {
                  if (a.macro_f1 != b.macro_f1) return a.macro_f1 > b.macro_f1;
                  return a.team < b.team;
              });
}

std::string render_task1_leaderboard(const std::vector<Task1LeaderboardRow>& rows,
                                     const RunProvenance& run) {
    JsonWriter w;
    w.begin_object();
    w.key("rows").begin_array();
    for (const auto& row : rows) {
        w.begin_object()
            .field("team", row.team)
            .field_metric("recall_at_2", row.recall_at_2)
            .field_metric("recall_at_5", row.recall_at_5)
            .field_metric("bpref", row.bpref)
            .field_metric("score_1_1", row.score_1_1)
            .field_metric("precision", row.precision)
            .field_metric("recall", row.recall)
            .field_metric("f1", row.f1)
            .field_metric("score_1_2", row.score_1_2)
            .end_object();
    }
    w.end_array();
    write_run_section(w, run);
    w.end_object();
    return w.str() + "\n";
}

std::string render_task2_leaderboard(const std::vector<Task2LeaderboardRow>& rows,
                                     const RunProvenance& run) {
    JsonWriter w;
    w.begin_object();
    w.key("rows").begin_array();
    for (const auto& row : rows) {
        w.begin_object()
            .field("team", row.team)
            .field_metric("macro_precision", row.macro_precision)
            .field_metric("macro_recall", row.macro_recall)
            .field_metric("macro_f1", row.macro_f1)
            .field_metric("micro_f1", row.micro_f1)
            .field_metric("weighted_f1", row.weighted_f1)
            .end_object();
    }
    w.end_array();
    write_run_section(w, run);
    w.end_object();
    return w.str() + "\n";
}

std::string render_task1_leaderboard_text(const std::vector<Task1LeaderboardRow>& rows) {
    std::string out =
        "Team                  R@2    R@5    Bpref  S1.1   P      R      F1     S1.2\n";
    for (const auto& row : rows) {
        char buf[200];
        std::snprintf(buf, sizeof(buf), "%-20s %6s %6s %6s %6s %6s %6s %6s %6s\n",
                      row.team.c_str(), display3(row.recall_at_2).c_str(),
                      display3(row.recall_at_5).c_str(), display3(row.bpref).c_str(),
                      display3(row.score_1_1).c_str(), display3(row.precision).c_str(),
                      display3(row.recall).c_str(), display3(row.f1).c_str(),
                      display3(row.score_1_2).c_str());
        out += buf;
    }
    return out;
}

std::string render_task2_leaderboard_text(const std::vector<Task2LeaderboardRow>& rows) {
    std::string out = "Team                  P(mac) R(mac) F1(mac) F1(mic) F1(wt)\n";
    for (const auto& row : rows) {
        char buf[200];
        std::snprintf(buf, sizeof(buf), "%-20s %6s %6s %7s %7s %6s\n", row.team.c_str(),
                      display3(row.macro_precision).c_str(),
                      display3(row.macro_recall).c_str(), display3(row.macro_f1).c_str(),
                      display3(row.micro_f1).c_str(), display3(row.weighted_f1).c_str());
        out += buf;
    }
    return out;
}

}  // namespace facteval
