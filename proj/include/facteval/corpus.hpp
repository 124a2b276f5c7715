#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "facteval/jsonl.hpp"
#include "facteval/labels.hpp"

namespace facteval {

// Identifiers are opaque strings throughout; no numeric assumptions.

struct Claim {
    std::string id;
    std::string text;
};

struct Abstract {
    std::string id;
    std::optional<std::string> title;
    std::string text;
};

/// Immutable after construction; safe to share across concurrent readers.
class Corpus {
public:
    void add_claim(Claim claim);
    void add_abstract(Abstract abstract);

    const std::vector<Claim>& claims() const { return claims_; }
    const std::vector<Abstract>& abstracts() const { return abstracts_; }

    const Claim* find_claim(const std::string& id) const;
    const Abstract* find_abstract(const std::string& id) const;

private:
    std::vector<Claim> claims_;
    std::vector<Abstract> abstracts_;
    std::unordered_map<std::string, std::size_t> claim_index_;
    std::unordered_map<std::string, std::size_t> abstract_index_;
};

struct GoldJudgment {
    std::string claim_id;
    std::string abstract_id;
    VerdictLabel label = VerdictLabel::NEI;
};

/// Per-claim gold judgments. `gold` preserves gold-file order: that order is
/// the documented tie-break for best-aligned-gold selection. `evidentiary`
/// is the supports/refutes subset in the same order.
struct EvidencePool {
    std::string claim_id;
    std::vector<GoldJudgment> gold;
    std::vector<GoldJudgment> evidentiary;
    std::unordered_set<std::string> judged_ids;
    std::unordered_set<std::string> evidentiary_ids;
    std::unordered_set<std::string> nei_ids;

    bool has_evidentiary() const { return !evidentiary.empty(); }
    bool is_judged(const std::string& abstract_id) const {
        return judged_ids.count(abstract_id) > 0;
    }
};

class GoldSet {
public:
    void add(GoldJudgment judgment);

    const std::vector<GoldJudgment>& judgments() const { return judgments_; }
    /// Pools keyed by claim_id, ordered (deterministic iteration).
    const std::map<std::string, EvidencePool>& pools() const { return pools_; }
    const EvidencePool* find(const std::string& claim_id) const;

private:
    std::vector<GoldJudgment> judgments_;
    std::map<std::string, EvidencePool> pools_;
};

struct RetrievedEntry {
    std::string abstract_id;
    std::optional<VerdictLabel> predicted;
};

struct ClaimRanking {
    std::string claim_id;
    std::vector<RetrievedEntry> ranked;  // rank = index + 1
};

/// Ranked retrieval (+ optional per-pair verdict) predictions for one team.
class RetrievalSubmission {
public:
    void add(ClaimRanking ranking);

    const std::vector<ClaimRanking>& rankings() const { return rankings_; }
    const ClaimRanking* find(const std::string& claim_id) const;

    /// Claims present in gold but absent from the submission. They are
    /// scored as zero recall, never silently dropped.
    const std::vector<std::string>& unsubmitted() const { return unsubmitted_; }
    void set_unsubmitted(std::vector<std::string> ids) { unsubmitted_ = std::move(ids); }

private:
    std::vector<ClaimRanking> rankings_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::string> unsubmitted_;
};

struct NarrativeAssignment {
    std::string claim_id;
    std::vector<NarrativeLabel> labels;  // sorted in taxonomy order, deduplicated
};

/// A set of per-claim narrative label sets: gold or a team submission.
class NarrativeSet {
public:
    void add(NarrativeAssignment assignment);

    const std::vector<NarrativeAssignment>& assignments() const { return assignments_; }
    const NarrativeAssignment* find(const std::string& claim_id) const;

    const std::vector<std::string>& unsubmitted() const { return unsubmitted_; }
    void set_unsubmitted(std::vector<std::string> ids) { unsubmitted_ = std::move(ids); }

private:
    std::vector<NarrativeAssignment> assignments_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::string> unsubmitted_;
};

// ---------------------------------------------------------------------------
// Loaders. Each records problems in `issues` (with file/line) instead of
// throwing; callers decide whether errors are fatal via throw_if_errors().
// `strict` additionally rejects unknown fields (validate mode).
// ---------------------------------------------------------------------------

Corpus load_corpus(const std::string& claims_path, const std::string& abstracts_path,
                   IssueList& issues, bool strict = false);

GoldSet load_gold(const std::string& path, const Corpus& corpus, IssueList& issues,
                  bool strict = false);

NarrativeSet load_narrative_gold(const std::string& path, const Corpus& corpus,
                                 IssueList& issues, bool strict = false);

RetrievalSubmission load_retrieval_submission(const std::string& path, const Corpus& corpus,
                                              const GoldSet& gold, IssueList& issues,
                                              int rank_cap = 5, bool strict = false);

NarrativeSet load_narrative_submission(const std::string& path, const Corpus& corpus,
                                       const NarrativeSet& narrative_gold, IssueList& issues,
                                       bool strict = false);

// ---------------------------------------------------------------------------
// Canonical serialization. Re-serializing a loaded input yields a canonical
// byte form; canonicalization is idempotent.
// ---------------------------------------------------------------------------

std::string canonical_claims(const Corpus& corpus);
std::string canonical_abstracts(const Corpus& corpus);
std::string canonical_gold(const GoldSet& gold);
std::string canonical_narrative_set(const NarrativeSet& set);
std::string canonical_retrieval_submission(const RetrievalSubmission& submission);

}  // namespace facteval
