#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "facteval/labels.hpp"

namespace facteval {

/// Raised when a judge or verifier call fails for good (after retries).
class ServiceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Result of one atomic-fact alignment between a candidate (retrieved) and a
/// reference (gold) abstract. The fact lists are stored for audit; scoring
/// uses only precision/recall/F1.
struct JudgeAlignment {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::vector<std::string> reference_facts;
    std::vector<std::string> candidate_facts;
};

/// Checks the alignment invariants: values in [0,1], F1 the harmonic mean of
/// P and R within 1e-6 when both are positive, 0 otherwise.
bool alignment_is_consistent(const JudgeAlignment& alignment);

/// Three-way label distribution from the proxy verifier.
struct VerifierDistribution {
    double p_supports = 0.0;
    double p_refutes = 0.0;
    double p_nei = 0.0;

    double probability_of(VerdictLabel label) const {
        switch (label) {
            case VerdictLabel::Supports: return p_supports;
            case VerdictLabel::Refutes: return p_refutes;
            case VerdictLabel::NEI: return p_nei;
        }
        return 0.0;
    }

    bool sums_to_one(double tolerance = 1e-6) const;
};

/// Decomposes reference and candidate evidence into atomic facts and scores
/// their alignment. Implementations must be safe for concurrent calls.
class AtomicFactJudge {
public:
    virtual ~AtomicFactJudge() = default;
    virtual const std::string& id() const = 0;
    virtual const std::string& version() const = 0;
    virtual JudgeAlignment align(const std::string& claim_text,
                                 const std::string& reference_abstract,
                                 const std::string& candidate_abstract) = 0;
};

/// Predicts the verdict distribution for a claim-evidence pair.
class ProxyVerifier {
public:
    virtual ~ProxyVerifier() = default;
    virtual const std::string& id() const = 0;
    virtual const std::string& version() const = 0;
    virtual VerifierDistribution verify(const std::string& claim_text,
                                        const std::string& evidence_text) = 0;
};

// ---------------------------------------------------------------------------
// Deterministic stubs. The engine must be correct independently of the
// non-reproducible production judge/verifier, so both services ship with a
// deterministic local implementation.
// ---------------------------------------------------------------------------

/// Splits text into lowercased alphanumeric tokens; the deduplicated sorted
/// token set doubles as the stub's "atomic facts".
std::vector<std::string> tokenize_lowercase(const std::string& text);

/// Alignment = token-overlap precision/recall/F1 over lowercased word sets.
class TokenOverlapJudge final : public AtomicFactJudge {
public:
    const std::string& id() const override { return id_; }
    const std::string& version() const override { return version_; }
    JudgeAlignment align(const std::string& claim_text, const std::string& reference_abstract,
                         const std::string& candidate_abstract) override;

private:
    std::string id_ = "token-overlap-judge";
    std::string version_ = "1";
};

/// Distribution lookup keyed by (claim_text, evidence_text); entries come
/// from a calibration fixture file, anything else is uniform. The version
/// string is derived from the table content so cache keys change with it.
class LookupTableVerifier final : public ProxyVerifier {
public:
    LookupTableVerifier();  // uniform everywhere
    /// Fixture file: one record per line with
    /// {"claim_text", "evidence_text", "p_supports", "p_refutes", "p_nei"}.
    explicit LookupTableVerifier(const std::string& table_path);

    void add_entry(const std::string& claim_text, const std::string& evidence_text,
                   VerifierDistribution distribution);

    const std::string& id() const override { return id_; }
    const std::string& version() const override { return version_; }
    VerifierDistribution verify(const std::string& claim_text,
                                const std::string& evidence_text) override;

private:
    std::string id_ = "lookup-table-verifier";
    std::string version_ = "uniform";
    std::unordered_map<std::string, VerifierDistribution> table_;
};

// ---------------------------------------------------------------------------
// Remote clients (wire protocol):
//   POST /align  {claim_text, reference_abstract, candidate_abstract}
//     -> {precision, recall, f1, reference_facts[], candidate_facts[], id?, version?}
//   POST /verify {claim_text, evidence_text}
//     -> {p_supports, p_refutes, p_nei, id?, version?}
// A response that echoes id/version must match the configured pair.
// ---------------------------------------------------------------------------

struct RetryPolicy {
    int attempts = 3;
    int backoff_initial_ms = 100;  // doubles per retry
};

class RemoteJudge final : public AtomicFactJudge {
public:
    RemoteJudge(std::string endpoint, std::string id = "remote-judge",
                std::string version = "1", RetryPolicy retry = {});
    const std::string& id() const override { return id_; }
    const std::string& version() const override { return version_; }
    JudgeAlignment align(const std::string& claim_text, const std::string& reference_abstract,
                         const std::string& candidate_abstract) override;

private:
    std::string endpoint_;
    std::string id_;
    std::string version_;
    RetryPolicy retry_;
};

class RemoteVerifier final : public ProxyVerifier {
public:
    RemoteVerifier(std::string endpoint, std::string id = "remote-verifier",
                   std::string version = "1", RetryPolicy retry = {});
    const std::string& id() const override { return id_; }
    const std::string& version() const override { return version_; }
    VerifierDistribution verify(const std::string& claim_text,
                                const std::string& evidence_text) override;

private:
    std::string endpoint_;
    std::string id_;
    std::string version_;
    RetryPolicy retry_;
};

// ---------------------------------------------------------------------------
// Persistent service cache. Append-only record file keyed by a content hash
// over ids, texts and the service id/version, so corpus edits or service
// upgrades invalidate entries. Concurrent reads, serialized writes,
// read-your-writes within a run.
// ---------------------------------------------------------------------------

struct AlignmentKey {
    std::string claim_id;
    std::string gold_abstract_id;
    std::string retrieved_abstract_id;
    std::string claim_text;
    std::string gold_text;
    std::string retrieved_text;
    std::string judge_id;
    std::string judge_version;

    std::string content_hash() const;
};

struct VerifyKey {
    std::string claim_id;
    std::string abstract_id;
    std::string claim_text;
    std::string evidence_text;
    std::string verifier_id;
    std::string verifier_version;

    std::string content_hash() const;
};

class ServiceCache {
public:
    /// In-memory only.
    ServiceCache() = default;
    /// Loads existing entries from `path`; new entries are appended to it.
    explicit ServiceCache(const std::string& path);

    std::optional<JudgeAlignment> find_alignment(const AlignmentKey& key) const;
    void store_alignment(const AlignmentKey& key, const JudgeAlignment& alignment);

    std::optional<VerifierDistribution> find_verdict(const VerifyKey& key) const;
    void store_verdict(const VerifyKey& key, const VerifierDistribution& distribution);

    std::size_t size() const;

private:
    struct AlignmentEntry {
        std::string claim_id, gold_abstract_id, retrieved_abstract_id;
        JudgeAlignment alignment;
    };
    struct VerifyEntry {
        std::string claim_id, abstract_id;
        VerifierDistribution distribution;
    };

    void append_record(const std::string& line);

    mutable std::mutex mutex_;
    std::string path_;  // empty = memory only
    std::unordered_map<std::string, AlignmentEntry> alignments_;
    std::unordered_map<std::string, VerifyEntry> verdicts_;
};

}  // namespace facteval
