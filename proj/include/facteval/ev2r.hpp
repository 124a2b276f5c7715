#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <vector>

#include "facteval/corpus.hpp"
#include "facteval/parallel.hpp"
#include "facteval/services.hpp"

namespace facteval {

/// Scores for one retrieved-but-unannotated claim-abstract pair.
struct Ev2rRecord {
    std::string claim_id;
    std::string abstract_id;              // retrieved, unannotated
    std::string best_gold_id;             // g*: best-aligned gold abstract
    VerdictLabel best_gold_label = VerdictLabel::NEI;  // y*
    double s_ref = 0.0;                   // max alignment F1 over gold abstracts
    double s_proxy = 0.0;                 // verifier mass on y*
    double ev2r_pair = 0.0;
    std::optional<VerdictLabel> predicted_label;  // submitted verdict, if any
    std::optional<double> s_conf;         // verifier mass on the predicted label
    std::optional<int> s_cons;            // 1 iff predicted == y*
    std::optional<double> s_ver;          // (s_conf + s_cons) / 2
};

/// A pair the services failed on after retries; excluded from scoring.
struct Ev2rFailure {
    std::string claim_id;
    std::string abstract_id;
    std::string stage;  // "align" or "verify"
    std::string message;
};

struct Ev2rClaimResult {
    std::string claim_id;
    bool has_non_nei_gold = false;
    std::size_t unannotated_retrieved = 0;   // retrieved pairs outside the gold annotations
    std::vector<Ev2rRecord> records;         // successfully scored pairs, rank order
    std::optional<double> claim_score;       // max ev2r_pair over records
};

struct Ev2rSummary {
    std::optional<double> submission_score;  // mean claim score over evaluated claims
    std::optional<double> submission_s_ver;  // mean s_ver over labeled pairs of evaluated claims
    std::size_t evaluated_claims = 0;
    std::size_t claims_with_non_nei_gold = 0;     // over the whole gold set
    std::size_t claims_only_nei_gold = 0;         // excluded: no evidential reference
    double avg_unannotated_per_evaluated_claim = 0.0;
    std::size_t s_ver_pairs = 0;
    std::size_t failed_pairs = 0;
    double ref_weight = 0.5;  // config echo
};

struct Ev2rEvaluation {
    std::vector<Ev2rClaimResult> claims;  // sorted by claim_id
    std::vector<Ev2rFailure> failures;    // sorted by (claim_id, abstract_id)
    Ev2rSummary summary;
    // Service invocations this run; cache hits do not count. Kept out of the
    // serialized report so warm reruns stay byte-identical.
    std::size_t judge_calls = 0;
    std::size_t verifier_calls = 0;
};

struct Ev2rOptions {
    /// Weight on the reference-based component: pair score =
    /// w * s_ref + (1-w) * s_proxy. Both components contribute equally by
    /// default; the weight is echoed into the report.
    double ref_weight = 0.5;
    /// Restrict g* candidates to evidentiary (supports/refutes) gold instead
    /// of every gold judgment.
    bool evidentiary_refs_only = false;
    /// Upper bound on concurrent judge/verifier work (per-claim parallel map).
    int parallelism = 1;
};

/// Intermediate result of the best-aligned-gold search.
struct BestAlignedGold {
    std::string gold_abstract_id;
    VerdictLabel gold_label = VerdictLabel::NEI;
    double s_ref = 0.0;
};

double ev2r_pair_score(double s_ref, double s_proxy, double ref_weight = 0.5);

/// Max pair score across a claim's records; absent when there are none.
std::optional<double> claim_ev2r(const std::vector<Ev2rRecord>& records);

/// Adapted Ev2R evaluation of retrieved-but-unannotated pairs against a
/// pluggable judge and verifier, with a persistent cache in front of both.
class Ev2rScorer {
public:
    Ev2rScorer(const Corpus& corpus, const GoldSet& gold, AtomicFactJudge& judge,
               ProxyVerifier& verifier, ServiceCache* cache, Ev2rOptions options = {});

    /// Iterates the claim's gold judgments in gold-file order and keeps the
    /// abstract with the highest alignment F1 to the retrieved abstract; the
    /// first one wins ties. Throws ServiceError after retries are exhausted.
    BestAlignedGold best_aligned_gold(const std::string& claim_id,
                                      const std::string& retrieved_abstract_id);

    /// Verifier probability mass on y*.
    double proxy_score(const std::string& claim_id, const std::string& retrieved_abstract_id,
                       VerdictLabel y_star);

    /// (s_conf, s_cons, s_ver) for a submitted label against y*.
    struct VerificationScore {
        double s_conf = 0.0;
        int s_cons = 0;
        double s_ver = 0.0;
    };
    VerificationScore verification_score(const std::string& claim_id,
                                         const std::string& retrieved_abstract_id,
                                         VerdictLabel predicted, VerdictLabel y_star);

    /// Full evaluation of a submission. Claims whose gold is exclusively NEI
    /// are excluded (no evidential reference). Eligible claims with no
    /// unannotated retrieved abstract are simply not evaluated; the summary
    /// reports both conditions separately.
    Ev2rEvaluation evaluate(const RetrievalSubmission& submission);

    std::size_t judge_calls() const { return judge_calls_; }
    std::size_t verifier_calls() const { return verifier_calls_; }

private:
    JudgeAlignment cached_align(const std::string& claim_id, const GoldJudgment& gold,
                                const std::string& retrieved_abstract_id);
    VerifierDistribution cached_verify(const std::string& claim_id,
                                       const std::string& retrieved_abstract_id);
    const std::string& claim_text(const std::string& claim_id) const;
    const std::string& abstract_text(const std::string& abstract_id) const;

    const Corpus& corpus_;
    const GoldSet& gold_;
    AtomicFactJudge& judge_;
    ProxyVerifier& verifier_;
    ServiceCache* cache_;  // may be null (no caching)
    Ev2rOptions options_;
    std::atomic<std::size_t> judge_calls_{0};
    std::atomic<std::size_t> verifier_calls_{0};
};

}  // namespace facteval
