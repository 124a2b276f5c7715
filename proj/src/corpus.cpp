#include "facteval/corpus.hpp"

#include <algorithm>

namespace facteval {

namespace {

std::string line_ref(int line) { return "line " + std::to_string(line); }

}  // namespace

// --- Corpus ------------------------------------------------------------------

void Corpus::add_claim(Claim claim) {
    claim_index_.emplace(claim.id, claims_.size());
    claims_.push_back(std::move(claim));
}

void Corpus::add_abstract(Abstract abstract) {
    abstract_index_.emplace(abstract.id, abstracts_.size());
    abstracts_.push_back(std::move(abstract));
}

const Claim* Corpus::find_claim(const std::string& id) const {
    auto it = claim_index_.find(id);
    return it == claim_index_.end() ? nullptr : &claims_[it->second];
}

const Abstract* Corpus::find_abstract(const std::string& id) const {
    auto it = abstract_index_.find(id);
    return it == abstract_index_.end() ? nullptr : &abstracts_[it->second];
}

// --- GoldSet -----------------------------------------------------------------

void GoldSet::add(GoldJudgment judgment) {
    auto& pool = pools_[judgment.claim_id];
    pool.claim_id = judgment.claim_id;
    pool.judged_ids.insert(judgment.abstract_id);
    if (judgment.label == VerdictLabel::NEI) {
        pool.nei_ids.insert(judgment.abstract_id);
    } else {
        pool.evidentiary.push_back(judgment);
        pool.evidentiary_ids.insert(judgment.abstract_id);
    }
    pool.gold.push_back(judgment);
    judgments_.push_back(std::move(judgment));
}

const EvidencePool* GoldSet::find(const std::string& claim_id) const {
    auto it = pools_.find(claim_id);
    return it == pools_.end() ? nullptr : &it->second;
}

// --- RetrievalSubmission -------------------------------------------------------

void RetrievalSubmission::add(ClaimRanking ranking) {
    index_.emplace(ranking.claim_id, rankings_.size());
    rankings_.push_back(std::move(ranking));
}

const ClaimRanking* RetrievalSubmission::find(const std::string& claim_id) const {
    auto it = index_.find(claim_id);
    return it == index_.end() ? nullptr : &rankings_[it->second];
}

// --- NarrativeSet --------------------------------------------------------------

void NarrativeSet::add(NarrativeAssignment assignment) {
    index_.emplace(assignment.claim_id, assignments_.size());
    assignments_.push_back(std::move(assignment));
}

const NarrativeAssignment* NarrativeSet::find(const std::string& claim_id) const {
    auto it = index_.find(claim_id);
    return it == index_.end() ? nullptr : &assignments_[it->second];
}

// --- Loaders -------------------------------------------------------------------

Corpus load_corpus(const std::string& claims_path, const std::string& abstracts_path,
                   IssueList& issues, bool strict) {
    Corpus corpus;
    std::unordered_map<std::string, int> claim_lines;
    std::size_t n_claims = for_each_jsonl_record(
        claims_path, issues, [&](int line, const nlohmann::json& rec) {
            if (!check_record_fields(rec, {"claim_id", "text"}, strict, claims_path, line,
                                     issues))
                return;
            auto id = require_string(rec, "claim_id", claims_path, line, issues);
            auto text = require_string(rec, "text", claims_path, line, issues);
            if (!id || !text) return;
            auto [it, inserted] = claim_lines.emplace(*id, line);
            if (!inserted) {
                issues.error(claims_path, line,
                             "duplicate claim_id \"" + *id + "\" (first seen on " +
                                 line_ref(it->second) + ")");
                return;
            }
            corpus.add_claim({*id, *text});
        });
    if (n_claims == 0) issues.warning(claims_path, 0, "no claim records loaded");

    std::unordered_map<std::string, int> abstract_lines;
    std::size_t n_abstracts = for_each_jsonl_record(
        abstracts_path, issues, [&](int line, const nlohmann::json& rec) {
            if (!check_record_fields(rec, {"abstract_id", "title", "text"}, strict,
                                     abstracts_path, line, issues))
                return;
            auto id = require_string(rec, "abstract_id", abstracts_path, line, issues);
            auto text = require_string(rec, "text", abstracts_path, line, issues);
            if (!id || !text) return;
            std::optional<std::string> title;
            if (rec.contains("title")) {
                if (!rec["title"].is_string()) {
                    issues.error(abstracts_path, line, "field \"title\" must be a string");
                    return;
                }
                title = rec["title"].get<std::string>();
            }
            auto [it, inserted] = abstract_lines.emplace(*id, line);
            if (!inserted) {
                issues.error(abstracts_path, line,
                             "duplicate abstract_id \"" + *id + "\" (first seen on " +
                                 line_ref(it->second) + ")");
                return;
            }
            corpus.add_abstract({*id, title, *text});
        });
    if (n_abstracts == 0) issues.warning(abstracts_path, 0, "no abstract records loaded");
    return corpus;
}

GoldSet load_gold(const std::string& path, const Corpus& corpus, IssueList& issues,
                  bool strict) {
    GoldSet gold;
    std::map<std::pair<std::string, std::string>, int> pair_lines;
    for_each_jsonl_record(path, issues, [&](int line, const nlohmann::json& rec) {
        if (!check_record_fields(rec, {"claim_id", "abstract_id", "label"}, strict, path,
                                 line, issues))
            return;
        auto claim_id = require_string(rec, "claim_id", path, line, issues);
        auto abstract_id = require_string(rec, "abstract_id", path, line, issues);
        auto label_text = require_string(rec, "label", path, line, issues);
        if (!claim_id || !abstract_id || !label_text) return;
        if (!corpus.find_claim(*claim_id)) {
            issues.error(path, line, "unknown claim_id \"" + *claim_id + "\"");
            return;
        }
        if (!corpus.find_abstract(*abstract_id)) {
            issues.error(path, line, "unknown abstract_id \"" + *abstract_id + "\"");
            return;
        }
        auto label = parse_verdict(*label_text);
        if (!label) {
            issues.error(path, line, "invalid label \"" + *label_text + "\"");
            return;
        }
        auto [it, inserted] = pair_lines.emplace(std::make_pair(*claim_id, *abstract_id), line);
        if (!inserted) {
            issues.error(path, line,
                         "duplicate judgment for (" + *claim_id + ", " + *abstract_id +
                             ") (first seen on " + line_ref(it->second) + ")");
            return;
        }
        gold.add({*claim_id, *abstract_id, *label});
    });
    return gold;
}

namespace {

// Shared by narrative gold and narrative submissions: reads a label-code array
// and enforces label-set invariants (non-empty, no duplicates, 0_0 exclusive).
std::optional<std::vector<NarrativeLabel>> read_label_set(const nlohmann::json& rec,
                                                          const std::string& path, int line,
                                                          IssueList& issues) {
    auto it = rec.find("labels");
    if (it == rec.end() || !it->is_array()) {
        issues.error(path, line, "missing or non-array field \"labels\"");
        return std::nullopt;
    }
    std::vector<NarrativeLabel> labels;
    bool ok = true;
    for (const auto& item : *it) {
        if (!item.is_string()) {
            issues.error(path, line, "narrative codes must be strings");
            ok = false;
            continue;
        }
        auto code = item.get<std::string>();
        auto label = parse_narrative_code(code);
        if (!label) {
            issues.error(path, line, "unknown narrative code \"" + code + "\"");
            ok = false;
            continue;
        }
        if (std::find(labels.begin(), labels.end(), *label) != labels.end()) {
            issues.error(path, line, "duplicate narrative code \"" + code + "\"");
            ok = false;
            continue;
        }
        labels.push_back(*label);
    }
    if (labels.empty()) {
        issues.error(path, line, "empty label set");
        return std::nullopt;
    }
    if (labels.size() > 1 &&
        std::find(labels.begin(), labels.end(), kNoDisinformation) != labels.end()) {
        issues.error(path, line, "label 0_0 is exclusive; no other code may accompany it");
        ok = false;
    }
    if (!ok) return std::nullopt;
    std::sort(labels.begin(), labels.end());
    return labels;
}

NarrativeSet load_narrative_file(const std::string& path, const Corpus& corpus,
                                 IssueList& issues, bool strict) {
    NarrativeSet set;
    std::unordered_map<std::string, int> claim_lines;
    for_each_jsonl_record(path, issues, [&](int line, const nlohmann::json& rec) {
        if (!check_record_fields(rec, {"claim_id", "labels"}, strict, path, line, issues))
            return;
        auto claim_id = require_string(rec, "claim_id", path, line, issues);
        if (!claim_id) return;
        if (!corpus.find_claim(*claim_id)) {
            issues.error(path, line, "unknown claim_id \"" + *claim_id + "\"");
            return;
        }
        auto [it, inserted] = claim_lines.emplace(*claim_id, line);
        if (!inserted) {
            issues.error(path, line,
                         "duplicate claim_id \"" + *claim_id + "\" (first seen on " +
                             line_ref(it->second) + ")");
            return;
        }
        auto labels = read_label_set(rec, path, line, issues);
        if (!labels) return;
        set.add({*claim_id, std::move(*labels)});
    });
    return set;
}

std::vector<std::string> collect_unsubmitted(const std::vector<std::string>& expected,
                                             const std::function<bool(const std::string&)>& has) {
    std::vector<std::string> missing;
    for (const auto& id : expected)
        if (!has(id)) missing.push_back(id);
    std::sort(missing.begin(), missing.end());
    return missing;
}

}  // namespace

NarrativeSet load_narrative_gold(const std::string& path, const Corpus& corpus,
                                 IssueList& issues, bool strict) {
    return load_narrative_file(path, corpus, issues, strict);
}

NarrativeSet load_narrative_submission(const std::string& path, const Corpus& corpus,
                                       const NarrativeSet& narrative_gold, IssueList& issues,
                                       bool strict) {
    NarrativeSet set = load_narrative_file(path, corpus, issues, strict);
    std::vector<std::string> gold_ids;
    gold_ids.reserve(narrative_gold.assignments().size());
    for (const auto& a : narrative_gold.assignments()) gold_ids.push_back(a.claim_id);
    set.set_unsubmitted(collect_unsubmitted(
        gold_ids, [&](const std::string& id) { return set.find(id) != nullptr; }));
    return set;
}

RetrievalSubmission load_retrieval_submission(const std::string& path, const Corpus& corpus,
                                              const GoldSet& gold, IssueList& issues,
                                              int rank_cap, bool strict) {
    RetrievalSubmission submission;
    std::unordered_map<std::string, int> claim_lines;
    for_each_jsonl_record(path, issues, [&](int line, const nlohmann::json& rec) {
        if (!check_record_fields(rec, {"claim_id", "ranked"}, strict, path, line, issues))
            return;
        auto claim_id = require_string(rec, "claim_id", path, line, issues);
        if (!claim_id) return;
        if (!corpus.find_claim(*claim_id)) {
            issues.error(path, line, "unknown claim_id \"" + *claim_id + "\"");
            return;
        }
        auto [cit, inserted] = claim_lines.emplace(*claim_id, line);
        if (!inserted) {
            issues.error(path, line,
                         "duplicate claim_id \"" + *claim_id + "\" (first seen on " +
                             line_ref(cit->second) + ")");
            return;
        }
        auto ranked_it = rec.find("ranked");
        if (ranked_it == rec.end() || !ranked_it->is_array()) {
            issues.error(path, line, "missing or non-array field \"ranked\"");
            return;
        }
        if (static_cast<int>(ranked_it->size()) > rank_cap) {
            issues.error(path, line,
                         "ranked list has " + std::to_string(ranked_it->size()) +
                             " entries; cap is " + std::to_string(rank_cap));
            return;
        }
        ClaimRanking ranking;
        ranking.claim_id = *claim_id;
        std::unordered_set<std::string> seen;
        bool ok = true;
        int position = 0;
        for (const auto& item : *ranked_it) {
            ++position;
            if (!check_record_fields(item, {"abstract_id", "label", "rank"}, strict, path,
                                     line, issues)) {
                ok = false;
                continue;
            }
            auto abstract_id = require_string(item, "abstract_id", path, line, issues);
            if (!abstract_id) {
                ok = false;
                continue;
            }
            if (!corpus.find_abstract(*abstract_id)) {
                issues.error(path, line, "unknown abstract_id \"" + *abstract_id + "\"");
                ok = false;
                continue;
            }
            if (!seen.insert(*abstract_id).second) {
                issues.error(path, line,
                             "duplicate abstract_id \"" + *abstract_id + "\" in ranked list");
                ok = false;
                continue;
            }
            // Rank is positional; an explicit rank field, when present, must
            // agree (consecutive from 1, no gaps or duplicates).
            if (item.contains("rank")) {
                if (!item["rank"].is_number_integer() ||
                    item["rank"].get<long long>() != position) {
                    issues.error(path, line,
                                 "rank sequence must be consecutive from 1: expected " +
                                     std::to_string(position) + " at position " +
                                     std::to_string(position));
                    ok = false;
                    continue;
                }
            }
            std::optional<VerdictLabel> predicted;
            if (item.contains("label")) {
                if (!item["label"].is_string()) {
                    issues.error(path, line, "field \"label\" must be a string");
                    ok = false;
                    continue;
                }
                predicted = parse_verdict(item["label"].get<std::string>());
                if (!predicted) {
                    issues.error(path, line,
                                 "invalid label \"" + item["label"].get<std::string>() + "\"");
                    ok = false;
                    continue;
                }
            }
            ranking.ranked.push_back({*abstract_id, predicted});
        }
        if (ok) submission.add(std::move(ranking));
    });

    std::vector<std::string> gold_ids;
    gold_ids.reserve(gold.pools().size());
    for (const auto& [id, pool] : gold.pools()) gold_ids.push_back(id);
    submission.set_unsubmitted(collect_unsubmitted(
        gold_ids, [&](const std::string& id) { return submission.find(id) != nullptr; }));
    return submission;
}

// --- Canonical serialization -----------------------------------------------------

std::string canonical_claims(const Corpus& corpus) {
    std::string out;
    for (const auto& claim : corpus.claims()) {
        JsonWriter w;
        w.begin_object().field("claim_id", claim.id).field("text", claim.text).end_object();
        out += w.str();
        out += '\n';
    }
    return out;
}

std::string canonical_abstracts(const Corpus& corpus) {
    std::string out;
    for (const auto& abstract : corpus.abstracts()) {
        JsonWriter w;
        w.begin_object().field("abstract_id", abstract.id);
        if (abstract.title) w.field("title", *abstract.title);
        w.field("text", abstract.text).end_object();
        out += w.str();
        out += '\n';
    }
    return out;
}

std::string canonical_gold(const GoldSet& gold) {
    std::string out;
    for (const auto& j : gold.judgments()) {
        JsonWriter w;
        w.begin_object()
            .field("claim_id", j.claim_id)
            .field("abstract_id", j.abstract_id)
            .field("label", verdict_name(j.label))
            .end_object();
        out += w.str();
        out += '\n';
    }
    return out;
}

std::string canonical_narrative_set(const NarrativeSet& set) {
    std::string out;
    for (const auto& a : set.assignments()) {
        JsonWriter w;
        w.begin_object().field("claim_id", a.claim_id).key("labels").begin_array();
        for (const auto& label : a.labels) w.value(label.code());
        w.end_array().end_object();
        out += w.str();
        out += '\n';
    }
    return out;
}

std::string canonical_retrieval_submission(const RetrievalSubmission& submission) {
    std::string out;
    for (const auto& ranking : submission.rankings()) {
        JsonWriter w;
        w.begin_object().field("claim_id", ranking.claim_id).key("ranked").begin_array();
        for (const auto& entry : ranking.ranked) {
            w.begin_object().field("abstract_id", entry.abstract_id);
            if (entry.predicted) w.field("label", verdict_name(*entry.predicted));
            w.end_object();
        }
        w.end_array().end_object();
        out += w.str();
        out += '\n';
    }
    return out;
}

}  // namespace facteval
