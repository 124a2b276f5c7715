// Test-local judge/verifier implementations and scenario builders for the
// Ev2R protocol tests.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "facteval/corpus.hpp"
#include "facteval/services.hpp"

namespace scripted {

using namespace facteval;

/// Deterministic judge scripted by reference-abstract text; P = R = F1.
class ScriptedJudge final : public AtomicFactJudge {
public:
    void set(const std::string& reference_text, double f1) { table_[reference_text] = f1; }
    const std::string& id() const override { return id_; }
    const std::string& version() const override { return version_; }
    JudgeAlignment align(const std::string&, const std::string& reference_abstract,
                         const std::string&) override {
        JudgeAlignment a;
        auto it = table_.find(reference_abstract);
        double f1 = it == table_.end() ? 0.0 : it->second;
        a.precision = a.recall = a.f1 = f1;
        return a;
    }

private:
    std::string id_ = "scripted-judge";
    std::string version_ = "1";
    std::map<std::string, double> table_;
};

struct Scenario {
    Corpus corpus;
    GoldSet gold;
    RetrievalSubmission submission;
};

/// One claim per requested F1, each with a single supports-gold abstract and
/// one unannotated retrieved abstract whose alignment equals that F1.
inline Scenario controllable_scenario(const std::vector<double>& claim_f1s, ScriptedJudge& judge,
                                      bool add_only_nei_claim = false) {
    Scenario s;
    for (std::size_t i = 0; i < claim_f1s.size(); ++i) {
        std::string claim = "c" + std::to_string(i);
        std::string gold_abstract = "g" + std::to_string(i);
        std::string gold_text = "gold text " + std::to_string(i);
        std::string retrieved = "r" + std::to_string(i);
        s.corpus.add_claim({claim, "claim " + std::to_string(i)});
        s.corpus.add_abstract({gold_abstract, std::nullopt, gold_text});
        s.corpus.add_abstract({retrieved, std::nullopt, "retrieved " + std::to_string(i)});
        s.gold.add({claim, gold_abstract, VerdictLabel::Supports});
        judge.set(gold_text, claim_f1s[i]);
        ClaimRanking ranking;
        ranking.claim_id = claim;
        ranking.ranked.push_back({retrieved, std::nullopt});
        s.submission.add(std::move(ranking));
    }
    if (add_only_nei_claim) {
        s.corpus.add_claim({"znei", "only nei claim"});
        s.corpus.add_abstract({"gnei", std::nullopt, "nei gold text"});
        s.corpus.add_abstract({"rnei", std::nullopt, "nei retrieved"});
        s.gold.add({"znei", "gnei", VerdictLabel::NEI});
        ClaimRanking ranking;
        ranking.claim_id = "znei";
        ranking.ranked.push_back({"rnei", std::nullopt});
        s.submission.add(std::move(ranking));
    }
    return s;
}

}  // namespace scripted
