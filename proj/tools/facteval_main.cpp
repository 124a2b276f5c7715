// facteval: scoring and analysis front end for evidence-grounded
// fact-checking shared tasks.
//
// Subcommands: validate, score, ev2r, iaa, report. All outputs land under
// --out-dir with fixed file names and are byte-stable given the same inputs,
// configuration, and cache state.
//
// Exit codes: 0 success, 1 validation failure, 2 runtime/endpoint failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "facteval/analysis.hpp"
#include "facteval/corpus.hpp"
#include "facteval/ev2r.hpp"
#include "facteval/iaa.hpp"
#include "facteval/narrative_metrics.hpp"
#include "facteval/report.hpp"
#include "facteval/retrieval_metrics.hpp"
#include "facteval/services.hpp"
#include "facteval/verification_metrics.hpp"

namespace fs = std::filesystem;
using namespace facteval;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct NamedPath {
    std::string team;
    std::string path;
};

NamedPath parse_named_path(const std::string& arg) {
    auto eq = arg.find('=');
    if (eq != std::string::npos && eq > 0)
        return {arg.substr(0, eq), arg.substr(eq + 1)};
    return {fs::path(arg).stem().string(), arg};
}

std::vector<NamedPath> parse_named_paths(const std::vector<std::string>& args) {
    std::vector<NamedPath> out;
    out.reserve(args.size());
    for (const auto& arg : args) out.push_back(parse_named_path(arg));
    return out;
}

void ensure_out_dir(const std::string& out_dir) {
    fs::create_directories(out_dir);
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void print_issues(const IssueList& issues) {
    for (const auto& issue : issues.all()) std::cerr << issue.render() << "\n";
}

// Shared input options for commands that need the corpus.
struct CorpusArgs {
    std::string claims_path;
    std::string abstracts_path;
    std::string gold_path;
    std::string narrative_gold_path;
    std::vector<std::string> retrieval_args;
    std::vector<std::string> narrative_args;
    int cap = 5;
    bool strict = false;
};

void add_corpus_options(CLI::App* cmd, CorpusArgs& args, bool need_gold) {
    cmd->add_option("--claims", args.claims_path, "Claims file (one record per line)")
        ->required();
    cmd->add_option("--abstracts", args.abstracts_path, "Abstracts file")->required();
    auto* gold = cmd->add_option("--gold", args.gold_path,
                                 "Gold claim-abstract judgments file");
    if (need_gold) gold->required();
    cmd->add_option("--narrative-gold", args.narrative_gold_path, "Gold narrative labels file");
    cmd->add_option("--retrieval", args.retrieval_args,
                    "Retrieval submission as team=path (repeatable)");
    cmd->add_option("--narrative", args.narrative_args,
                    "Narrative submission as team=path (repeatable)");
    cmd->add_option("--cap", args.cap, "Maximum ranked entries per claim")
        ->default_val(5);
}

struct LoadedInputs {
    Corpus corpus;
    GoldSet gold;
    NarrativeSet narrative_gold;
    bool has_gold = false;
    bool has_narrative_gold = false;
    std::vector<std::pair<NamedPath, RetrievalSubmission>> retrieval;
    std::vector<std::pair<NamedPath, NarrativeSet>> narrative;
};

LoadedInputs load_inputs(const CorpusArgs& args, IssueList& issues) {
    LoadedInputs in;
    in.corpus = load_corpus(args.claims_path, args.abstracts_path, issues, args.strict);
    if (!args.gold_path.empty()) {
        in.gold = load_gold(args.gold_path, in.corpus, issues, args.strict);
        in.has_gold = true;
    }
    if (!args.narrative_gold_path.empty()) {
        in.narrative_gold =
            load_narrative_gold(args.narrative_gold_path, in.corpus, issues, args.strict);
        in.has_narrative_gold = true;
    }
    for (const auto& named : parse_named_paths(args.retrieval_args))
        in.retrieval.emplace_back(named, load_retrieval_submission(named.path, in.corpus, in.gold,
                                                                   issues, args.cap, args.strict));
    for (const auto& named : parse_named_paths(args.narrative_args))
        in.narrative.emplace_back(
            named, load_narrative_submission(named.path, in.corpus, in.narrative_gold, issues,
                                             args.strict));
    return in;
}

void add_input_provenance(RunProvenance& run, const CorpusArgs& args) {
    run.add_input("claims", args.claims_path);
    run.add_input("abstracts", args.abstracts_path);
    if (!args.gold_path.empty()) run.add_input("gold", args.gold_path);
    if (!args.narrative_gold_path.empty())
        run.add_input("narrative_gold", args.narrative_gold_path);
    for (const auto& named : parse_named_paths(args.retrieval_args))
        run.add_input("retrieval." + named.team, named.path);
    for (const auto& named : parse_named_paths(args.narrative_args))
        run.add_input("narrative." + named.team, named.path);
}

// --- validate ---------------------------------------------------------------------

int cmd_validate(const CorpusArgs& args, const std::string& out_dir) {
    IssueList issues;
    load_inputs(args, issues);
    RunProvenance run;
    run.add_config("command", "validate");
    run.add_config("cap", std::to_string(args.cap));
    run.add_config("strict", "true");
    add_input_provenance(run, args);
    ensure_out_dir(out_dir);
    write_text_file(join_path(out_dir, "validation_report.json"),
                    render_validation_report(issues, run));
    print_issues(issues);
    return issues.has_errors() ? kExitValidation : kExitOk;
}

// --- score ------------------------------------------------------------------------

struct ScoreArgs {
    CorpusArgs inputs;
    std::vector<std::string> tasks;  // retrieval, verification, narrative
    std::vector<int> ks = {2, 5};
    std::string macro_universe = "all";
    int parallelism = 1;
};

int cmd_score(const ScoreArgs& args, const std::string& out_dir) {
    IssueList issues;
    LoadedInputs in = load_inputs(args.inputs, issues);
    if (issues.has_errors()) {
        print_issues(issues);
        return kExitValidation;
    }

    std::vector<std::string> tasks = args.tasks;
    if (tasks.empty()) {
        if (!in.retrieval.empty()) {
            tasks.push_back("retrieval");
            tasks.push_back("verification");
        }
        if (!in.narrative.empty()) tasks.push_back("narrative");
    }
    auto has_task = [&](const std::string& name) {
        return std::find(tasks.begin(), tasks.end(), name) != tasks.end();
    };
    if ((has_task("retrieval") || has_task("verification")) &&
        (in.retrieval.empty() || !in.has_gold)) {
        std::cerr << "error: retrieval/verification scoring needs --gold and --retrieval\n";
        return kExitValidation;
    }
    if (has_task("narrative") && (in.narrative.empty() || !in.has_narrative_gold)) {
        std::cerr << "error: narrative scoring needs --narrative-gold and --narrative\n";
        return kExitValidation;
    }

    const ExecMode mode = exec_mode_for_parallelism(args.parallelism);
    const MacroUniverse universe = args.macro_universe == "present"
                                       ? MacroUniverse::PresentLabels
                                       : MacroUniverse::AllLabels;
    ensure_out_dir(out_dir);

    RunProvenance run;
    run.add_config("command", "score");
    {
        std::string joined;
        for (const auto& t : tasks) joined += (joined.empty() ? "" : ",") + t;
        run.add_config("tasks", joined);
    }
    run.add_config("cap", std::to_string(args.inputs.cap));
    {
        std::string joined;
        for (int k : args.ks) joined += (joined.empty() ? "" : ",") + std::to_string(k);
        run.add_config("k_values", joined);
    }
    run.add_config("macro_label_universe", args.macro_universe == "present" ? "present_labels"
                                                                            : "all_labels");
    run.add_config("parallelism", std::to_string(args.parallelism));
    add_input_provenance(run, args.inputs);

    std::vector<Task1LeaderboardRow> task1_rows;
    for (const auto& [named, submission] : in.retrieval) {
        Task1LeaderboardRow row;
        row.team = named.team;
        RetrievalScoreReport retrieval_report;
        if (has_task("retrieval")) {
            retrieval_report = score_retrieval(submission, in.gold, args.ks, mode);
            if (retrieval_report.aggregate_recall.count(2))
                row.recall_at_2 = retrieval_report.aggregate_recall.at(2);
            if (retrieval_report.aggregate_recall.count(5))
                row.recall_at_5 = retrieval_report.aggregate_recall.at(5);
            row.bpref = retrieval_report.aggregate_bpref;
            row.score_1_1 = retrieval_report.score_1_1;
            write_text_file(join_path(out_dir, "retrieval_scores_" + named.team + ".json"),
                            render_retrieval_report(retrieval_report, run));
        }
        if (has_task("verification")) {
            CollectedPairs pairs = collect_judged_pairs(submission, in.gold);
            if (pairs.judged.empty()) {
                std::cerr << "warning: team " << named.team
                          << " retrieved no gold-judged pairs; verification not scored\n";
            } else {
                VerificationReport verification = weighted_prf(pairs.judged);
                if (row.recall_at_5)
                    verification.score_1_2 =
                        score_task12(verification.weighted_f1, *row.recall_at_5);
                row.precision = verification.weighted_precision;
                row.recall = verification.weighted_recall;
                row.f1 = verification.weighted_f1;
                row.score_1_2 = verification.score_1_2;
                write_text_file(
                    join_path(out_dir, "verification_scores_" + named.team + ".json"),
                    render_verification_report(verification, pairs, run));
            }
        }
        task1_rows.push_back(std::move(row));
    }
    if (!task1_rows.empty()) {
        sort_task1_leaderboard(task1_rows);
        write_text_file(join_path(out_dir, "leaderboard_task1.json"),
                        render_task1_leaderboard(task1_rows, run));
        write_text_file(join_path(out_dir, "leaderboard_task1.txt"),
                        render_task1_leaderboard_text(task1_rows));
    }

    std::vector<Task2LeaderboardRow> task2_rows;
    if (has_task("narrative")) {
        for (const auto& [named, submission] : in.narrative) {
            auto [gold_matrix, pred_matrix] = binarize(in.narrative_gold, submission);
            NarrativeReport report = multilabel_scores(gold_matrix, pred_matrix, universe);
            Task2LeaderboardRow row;
            row.team = named.team;
            row.macro_precision = report.macro_precision;
            row.macro_recall = report.macro_recall;
            row.macro_f1 = report.macro_f1;
            row.micro_f1 = report.micro_f1;
            row.weighted_f1 = report.weighted_f1;
            task2_rows.push_back(std::move(row));
            write_text_file(join_path(out_dir, "narrative_scores_" + named.team + ".json"),
                            render_narrative_report(report, pred_matrix.unsubmitted, run));
        }
        sort_task2_leaderboard(task2_rows);
        write_text_file(join_path(out_dir, "leaderboard_task2.json"),
                        render_task2_leaderboard(task2_rows, run));
        write_text_file(join_path(out_dir, "leaderboard_task2.txt"),
                        render_task2_leaderboard_text(task2_rows));
    }
    return kExitOk;
}

// --- ev2r -------------------------------------------------------------------------

struct Ev2rArgs {
    CorpusArgs inputs;
    std::string judge = "stub";     // "stub" or endpoint URL
    std::string verifier = "stub";  // "stub" or endpoint URL
    std::string verifier_table;
    std::string judge_id = "remote-judge";
    std::string judge_version = "1";
    std::string verifier_id = "remote-verifier";
    std::string verifier_version = "1";
    std::string cache_path;
    double ref_weight = 0.5;
    bool evidentiary_refs_only = false;
    int parallelism = 1;
};

int cmd_ev2r(const Ev2rArgs& args, const std::string& out_dir) {
    IssueList issues;
    LoadedInputs in = load_inputs(args.inputs, issues);
    if (issues.has_errors()) {
        print_issues(issues);
        return kExitValidation;
    }
    if (in.retrieval.empty() || !in.has_gold) {
        std::cerr << "error: ev2r needs --gold and at least one --retrieval submission\n";
        return kExitValidation;
    }

    // Environment overrides for the service endpoints.
    std::string judge_endpoint = args.judge;
    std::string verifier_endpoint = args.verifier;
    if (const char* env = std::getenv("FACTEVAL_JUDGE_URL")) judge_endpoint = env;
    if (const char* env = std::getenv("FACTEVAL_VERIFIER_URL")) verifier_endpoint = env;

    std::unique_ptr<AtomicFactJudge> judge;
    if (judge_endpoint == "stub")
        judge = std::make_unique<TokenOverlapJudge>();
    else
        judge = std::make_unique<RemoteJudge>(judge_endpoint, args.judge_id, args.judge_version);
    std::unique_ptr<ProxyVerifier> verifier;
    if (verifier_endpoint == "stub")
        verifier = args.verifier_table.empty()
                       ? std::make_unique<LookupTableVerifier>()
                       : std::make_unique<LookupTableVerifier>(args.verifier_table);
    else
        verifier = std::make_unique<RemoteVerifier>(verifier_endpoint, args.verifier_id,
                                                    args.verifier_version);

    std::unique_ptr<ServiceCache> cache;
    if (!args.cache_path.empty()) cache = std::make_unique<ServiceCache>(args.cache_path);

    Ev2rOptions options;
    options.ref_weight = args.ref_weight;
    options.evidentiary_refs_only = args.evidentiary_refs_only;
    options.parallelism = args.parallelism;

    ensure_out_dir(out_dir);
    RunProvenance run;
    run.add_config("command", "ev2r");
    run.add_config("judge", judge->id() + "@" + judge->version());
    run.add_config("verifier", verifier->id() + "@" + verifier->version());
    run.add_config("ref_weight", JsonWriter::format_metric(args.ref_weight));
    run.add_config("evidentiary_refs_only", args.evidentiary_refs_only ? "true" : "false");
    run.add_config("parallelism", std::to_string(args.parallelism));
    run.add_config("cap", std::to_string(args.inputs.cap));
    add_input_provenance(run, args.inputs);
    if (!args.verifier_table.empty()) run.add_input("verifier_table", args.verifier_table);

    bool any_failures = false;
    for (const auto& [named, submission] : in.retrieval) {
        Ev2rScorer scorer(in.corpus, in.gold, *judge, *verifier, cache.get(), options);
        Ev2rEvaluation evaluation;
        try {
            evaluation = scorer.evaluate(submission);
        } catch (const std::exception& e) {
            std::cerr << "error: ev2r evaluation failed for team " << named.team << ": "
                      << e.what() << "\n";
            return kExitRuntime;
        }
        write_text_file(join_path(out_dir, "ev2r_summary_" + named.team + ".json"),
                        render_ev2r_summary(evaluation, run));
        write_text_file(join_path(out_dir, "ev2r_audit_" + named.team + ".jsonl"),
                        render_ev2r_audit(evaluation));
        if (evaluation.summary.failed_pairs > 0) {
            any_failures = true;
            std::cerr << "warning: " << evaluation.summary.failed_pairs
                      << " pair(s) unevaluated for team " << named.team
                      << " after retries; coverage reduced\n";
        }
    }
    return any_failures ? kExitRuntime : kExitOk;
}

// --- iaa --------------------------------------------------------------------------

struct IaaArgs {
    std::string annotations_path;
    int threshold = 3;
    int panel = 4;
    bool include_no_disinformation = false;
    bool pair_mean_pa = false;
    int parallelism = 1;
    bool strict = false;
};

int cmd_iaa(const IaaArgs& args, const std::string& out_dir) {
    IssueList issues;
    AnnotationMatrix matrix = load_annotations(args.annotations_path, issues, args.strict);
    if (issues.has_errors()) {
        print_issues(issues);
        return kExitValidation;
    }

    RunProvenance run;
    run.add_config("command", "iaa");
    run.add_config("threshold", std::to_string(args.threshold));
    run.add_config("panel_size", std::to_string(args.panel));
    run.add_config("include_no_disinformation",
                   args.include_no_disinformation ? "true" : "false");
    run.add_config("parallelism", std::to_string(args.parallelism));
    run.add_input("annotations", args.annotations_path);

    try {
        AgreementReport report =
            agreement_report(matrix, args.include_no_disinformation,
                             exec_mode_for_parallelism(args.parallelism));
        if (args.pair_mean_pa)
            for (auto& row : report.per_label)
                row.positive_agreement = positive_agreement_pair_mean(matrix, row.label);
        GoldAggregation aggregation = aggregate_gold(matrix, args.threshold, args.panel);
        ensure_out_dir(out_dir);
        write_text_file(join_path(out_dir, "iaa_report.json"),
                        render_agreement_report(report, aggregation, run));
        write_text_file(join_path(out_dir, "iaa_table.txt"), render_agreement_table(report));
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}

// --- report (error analysis) --------------------------------------------------------

int cmd_report(const CorpusArgs& args, int parallelism, const std::string& out_dir) {
    IssueList issues;
    LoadedInputs in = load_inputs(args, issues);
    if (issues.has_errors()) {
        print_issues(issues);
        return kExitValidation;
    }
    if (!in.has_gold || in.retrieval.empty()) {
        std::cerr << "error: report needs --gold and at least one --retrieval submission\n";
        return kExitValidation;
    }

    RunProvenance run;
    run.add_config("command", "report");
    run.add_config("cap", std::to_string(args.cap));
    run.add_config("parallelism", std::to_string(parallelism));
    add_input_provenance(run, args);
    ensure_out_dir(out_dir);

    std::vector<const RetrievalSubmission*> submissions;
    for (const auto& [named, submission] : in.retrieval) submissions.push_back(&submission);
    DifficultyProfile profile = difficulty_profile(submissions, in.gold);
    write_text_file(join_path(out_dir, "difficulty_profile.json"),
                    render_difficulty_profile(profile, run));
    write_text_file(join_path(out_dir, "difficulty_series.json"),
                    render_difficulty_series(profile));

    for (const auto& [named, submission] : in.retrieval) {
        CollectedPairs pairs = collect_judged_pairs(submission, in.gold);
        if (!pairs.judged.empty()) {
            ConfusionMatrix matrix = confusion_matrix(pairs.judged);
            write_text_file(join_path(out_dir, "confusion_" + named.team + ".json"),
                            render_confusion_report(matrix, run));
        }
        if (in.has_narrative_gold) {
            write_text_file(
                join_path(out_dir, "refutation_by_group_" + named.team + ".json"),
                render_refutation_by_group(refutation_by_group(pairs.judged, in.narrative_gold),
                                           run));
            write_text_file(join_path(out_dir, "recall_by_group_" + named.team + ".json"),
                            render_recall_by_group(
                                recall_by_group(submission, in.gold, in.narrative_gold), run));
        }
    }
    if (in.has_narrative_gold && !in.narrative.empty()) {
        std::vector<std::pair<std::string, NarrativeMatchReport>> match_reports;
        for (const auto& [named, submission] : in.narrative) {
            NarrativeMatchReport report = narrative_match_report(in.narrative_gold, submission);
            write_text_file(join_path(out_dir, "narrative_match_" + named.team + ".json"),
                            render_narrative_match_report(report, run));
            match_reports.emplace_back(named.team, std::move(report));
        }
        write_text_file(join_path(out_dir, "narrative_match_pooled.json"),
                        render_narrative_match_pooled(match_reports, run));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scoring engine for evidence-grounded fact-checking shared tasks"};
    app.require_subcommand(1);

    std::string out_dir = "out";

    // validate
    CorpusArgs validate_args;
    validate_args.strict = true;
    auto* validate = app.add_subcommand("validate", "Validate corpus, gold and submissions");
    add_corpus_options(validate, validate_args, /*need_gold=*/false);
    validate->add_option("--out-dir", out_dir, "Output directory")->default_val("out");

    // score
    ScoreArgs score_args;
    auto* score = app.add_subcommand("score", "Score retrieval/verification/narrative tasks");
    add_corpus_options(score, score_args.inputs, /*need_gold=*/false);
    score->add_option("--tasks", score_args.tasks,
                      "Subset of {retrieval,verification,narrative}; default inferred");
    score->add_option("--k", score_args.ks, "Recall cutoffs")->default_val(std::vector<int>{2, 5});
    score->add_option("--macro-universe", score_args.macro_universe,
                      "Macro averaging universe: all | present")
        ->check(CLI::IsMember({"all", "present"}))
        ->default_val("all");
    score->add_option("--parallelism", score_args.parallelism, "Per-claim parallel map width")
        ->default_val(1);
    score->add_option("--out-dir", out_dir, "Output directory")->default_val("out");

    // ev2r
    Ev2rArgs ev2r_args;
    auto* ev2r = app.add_subcommand("ev2r", "Score retrieved-but-unannotated pairs");
    add_corpus_options(ev2r, ev2r_args.inputs, /*need_gold=*/true);
    ev2r->add_option("--judge", ev2r_args.judge, "\"stub\" or judge endpoint URL")
        ->default_val("stub");
    ev2r->add_option("--verifier", ev2r_args.verifier, "\"stub\" or verifier endpoint URL")
        ->default_val("stub");
    ev2r->add_option("--verifier-table", ev2r_args.verifier_table,
                     "Calibration table for the stub verifier");
    ev2r->add_option("--judge-id", ev2r_args.judge_id, "Judge identifier for cache keys");
    ev2r->add_option("--judge-version", ev2r_args.judge_version, "Judge version for cache keys");
    ev2r->add_option("--verifier-id", ev2r_args.verifier_id, "Verifier identifier");
    ev2r->add_option("--verifier-version", ev2r_args.verifier_version, "Verifier version");
    ev2r->add_option("--cache", ev2r_args.cache_path, "Persistent service cache file");
    ev2r->add_option("--ev2r-weight", ev2r_args.ref_weight,
                     "Weight on the reference-based component")
        ->check(CLI::Range(0.0, 1.0))
        ->default_val(0.5);
    ev2r->add_flag("--evidentiary-refs-only", ev2r_args.evidentiary_refs_only,
                   "Restrict best-aligned-gold candidates to supports/refutes gold");
    ev2r->add_option("--parallelism", ev2r_args.parallelism, "Concurrent service calls bound")
        ->default_val(1);
    ev2r->add_option("--out-dir", out_dir, "Output directory")->default_val("out");

    // iaa
    IaaArgs iaa_args;
    auto* iaa = app.add_subcommand("iaa", "Inter-annotator agreement and gold aggregation");
    iaa->add_option("--annotations", iaa_args.annotations_path, "Raw annotations file")
        ->required();
    iaa->add_option("--threshold", iaa_args.threshold, "Majority-vote threshold")
        ->default_val(3);
    iaa->add_option("--panel", iaa_args.panel, "Annotator panel size")->default_val(4);
    iaa->add_flag("--include-no-disinformation", iaa_args.include_no_disinformation,
                  "Include 0_0 / group 0 in the prevalence-weighted averages");
    iaa->add_flag("--pair-mean-pa", iaa_args.pair_mean_pa,
                  "Report per-pair-mean Dice instead of pooled");
    iaa->add_option("--parallelism", iaa_args.parallelism, "Per-label parallel map width")
        ->default_val(1);
    iaa->add_option("--out-dir", out_dir, "Output directory")->default_val("out");

    // report
    CorpusArgs report_args;
    int report_parallelism = 1;
    auto* report = app.add_subcommand("report", "Error-analysis reports");
    add_corpus_options(report, report_args, /*need_gold=*/true);
    report->add_option("--parallelism", report_parallelism, "Per-claim parallel map width")
        ->default_val(1);
    report->add_option("--out-dir", out_dir, "Output directory")->default_val("out");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(validate_args, out_dir);
        if (score->parsed()) return cmd_score(score_args, out_dir);
        if (ev2r->parsed()) return cmd_ev2r(ev2r_args, out_dir);
        if (iaa->parsed()) return cmd_iaa(iaa_args, out_dir);
        if (report->parsed()) return cmd_report(report_args, report_parallelism, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
