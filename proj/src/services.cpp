#include "facteval/services.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "facteval/hash.hpp"
#include "facteval/jsonl.hpp"

namespace facteval {

bool alignment_is_consistent(const JudgeAlignment& a) {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in_unit(a.precision) || !in_unit(a.recall) || !in_unit(a.f1)) return false;
    if (a.precision == 0.0 || a.recall == 0.0) return a.f1 == 0.0;
    double harmonic = 2.0 * a.precision * a.recall / (a.precision + a.recall);
    return std::abs(a.f1 - harmonic) <= 1e-6;
}

bool VerifierDistribution::sums_to_one(double tolerance) const {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in_unit(p_supports) || !in_unit(p_refutes) || !in_unit(p_nei)) return false;
    return std::abs(p_supports + p_refutes + p_nei - 1.0) <= tolerance;
}

// --- stubs ---------------------------------------------------------------------

std::vector<std::string> tokenize_lowercase(const std::string& text) {
    std::set<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            current += static_cast<char>(std::tolower(c));
        } else if (!current.empty()) {
            tokens.insert(current);
            current.clear();
        }
    }
    if (!current.empty()) tokens.insert(current);
    return {tokens.begin(), tokens.end()};
}

JudgeAlignment TokenOverlapJudge::align(const std::string& /*claim_text*/,
                                        const std::string& reference_abstract,
                                        const std::string& candidate_abstract) {
    JudgeAlignment out;
    out.reference_facts = tokenize_lowercase(reference_abstract);
    out.candidate_facts = tokenize_lowercase(candidate_abstract);
    std::size_t overlap = 0;
    {
        std::set<std::string> reference(out.reference_facts.begin(), out.reference_facts.end());
        for (const auto& tok : out.candidate_facts)
            if (reference.count(tok)) ++overlap;
    }
    out.precision = out.candidate_facts.empty()
                        ? 0.0
                        : static_cast<double>(overlap) / static_cast<double>(out.candidate_facts.size());
    out.recall = out.reference_facts.empty()
                     ? 0.0
                     : static_cast<double>(overlap) / static_cast<double>(out.reference_facts.size());
    out.f1 = (out.precision + out.recall == 0.0)
                 ? 0.0
                 : 2.0 * out.precision * out.recall / (out.precision + out.recall);
    return out;
}

namespace {

std::string pair_key(const std::string& claim_text, const std::string& evidence_text) {
    FieldHasher hasher;
    hasher.add(claim_text).add(evidence_text);
    return hasher.hex();
}

}  // namespace

LookupTableVerifier::LookupTableVerifier() = default;

LookupTableVerifier::LookupTableVerifier(const std::string& table_path) {
    IssueList issues;
    for_each_jsonl_record(table_path, issues, [&](int line, const nlohmann::json& rec) {
        (void)line;
        VerifierDistribution d;
        d.p_supports = rec.value("p_supports", 0.0);
        d.p_refutes = rec.value("p_refutes", 0.0);
        d.p_nei = rec.value("p_nei", 0.0);
        if (!d.sums_to_one())
            throw ServiceError("verifier table entry does not sum to 1 at " + table_path +
                               ":" + std::to_string(line));
        table_[pair_key(rec.value("claim_text", ""), rec.value("evidence_text", ""))] = d;
    });
    issues.throw_if_errors();
    version_ = "table-" + hash_file(table_path);
}

void LookupTableVerifier::add_entry(const std::string& claim_text,
                                    const std::string& evidence_text,
                                    VerifierDistribution distribution) {
    table_[pair_key(claim_text, evidence_text)] = distribution;
    version_ = "inline-" + std::to_string(table_.size());
}

VerifierDistribution LookupTableVerifier::verify(const std::string& claim_text,
                                                 const std::string& evidence_text) {
    auto it = table_.find(pair_key(claim_text, evidence_text));
    if (it != table_.end()) return it->second;
    return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
}

// --- remote clients ---------------------------------------------------------------

namespace {

// POSTs `body` to endpoint+path with retries and exponential backoff; returns
// the parsed JSON response or throws ServiceError.
nlohmann::json post_with_retries(const std::string& endpoint, const std::string& path,
                                 const nlohmann::json& body, const RetryPolicy& retry,
                                 const char* what) {
    std::string error;
    int backoff_ms = retry.backoff_initial_ms;
    for (int attempt = 1; attempt <= retry.attempts; ++attempt) {
        if (attempt > 1) {
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
            backoff_ms *= 2;
        }
        httplib::Client client(endpoint);
        client.set_connection_timeout(10, 0);
        client.set_read_timeout(60, 0);
        auto result = client.Post(path, body.dump(), "application/json");
        if (!result) {
            error = "transport error: " + httplib::to_string(result.error());
            continue;
        }
        if (result->status != 200) {
            error = "HTTP status " + std::to_string(result->status);
            continue;
        }
        nlohmann::json parsed = nlohmann::json::parse(result->body, nullptr, false);
        if (parsed.is_discarded()) {
            error = "response is not valid JSON";
            continue;
        }
        return parsed;
    }
    throw ServiceError(std::string(what) + " call failed after " +
                       std::to_string(retry.attempts) + " attempts: " + error);
}

void check_service_echo(const nlohmann::json& response, const std::string& id,
                        const std::string& version, const char* what) {
    if (response.contains("id") && response["id"].get<std::string>() != id)
        throw ServiceError(std::string(what) + " id mismatch: expected \"" + id + "\", got \"" +
                           response["id"].get<std::string>() + "\"");
    if (response.contains("version") && response["version"].get<std::string>() != version)
        throw ServiceError(std::string(what) + " version mismatch: expected \"" + version +
                           "\", got \"" + response["version"].get<std::string>() + "\"");
}

}  // namespace

RemoteJudge::RemoteJudge(std::string endpoint, std::string id, std::string version,
                         RetryPolicy retry)
    : endpoint_(std::move(endpoint)),
      id_(std::move(id)),
      version_(std::move(version)),
      retry_(retry) {}

JudgeAlignment RemoteJudge::align(const std::string& claim_text,
                                  const std::string& reference_abstract,
                                  const std::string& candidate_abstract) {
    nlohmann::json body = {{"claim_text", claim_text},
                           {"reference_abstract", reference_abstract},
                           {"candidate_abstract", candidate_abstract}};
    nlohmann::json response = post_with_retries(endpoint_, "/align", body, retry_, "judge");
    check_service_echo(response, id_, version_, "judge");
    JudgeAlignment alignment;
    try {
        alignment.precision = response.at("precision").get<double>();
        alignment.recall = response.at("recall").get<double>();
        alignment.f1 = response.at("f1").get<double>();
        if (response.contains("reference_facts"))
            alignment.reference_facts = response["reference_facts"].get<std::vector<std::string>>();
        if (response.contains("candidate_facts"))
            alignment.candidate_facts = response["candidate_facts"].get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw ServiceError(std::string("judge response malformed: ") + e.what());
    }
    if (!alignment_is_consistent(alignment))
        throw ServiceError("judge returned inconsistent precision/recall/F1");
    return alignment;
}

RemoteVerifier::RemoteVerifier(std::string endpoint, std::string id, std::string version,
                               RetryPolicy retry)
    : endpoint_(std::move(endpoint)),
      id_(std::move(id)),
      version_(std::move(version)),
      retry_(retry) {}

VerifierDistribution RemoteVerifier::verify(const std::string& claim_text,
                                            const std::string& evidence_text) {
    nlohmann::json body = {{"claim_text", claim_text}, {"evidence_text", evidence_text}};
    nlohmann::json response = post_with_retries(endpoint_, "/verify", body, retry_, "verifier");
    check_service_echo(response, id_, version_, "verifier");
    VerifierDistribution distribution;
    try {
        distribution.p_supports = response.at("p_supports").get<double>();
        distribution.p_refutes = response.at("p_refutes").get<double>();
        distribution.p_nei = response.at("p_nei").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ServiceError(std::string("verifier response malformed: ") + e.what());
    }
    if (!distribution.sums_to_one())
        throw ServiceError("verifier distribution does not sum to 1");
    return distribution;
}

// --- cache ---------------------------------------------------------------------

std::string AlignmentKey::content_hash() const {
    FieldHasher hasher;
    hasher.add("align")
        .add(claim_id)
        .add(gold_abstract_id)
        .add(retrieved_abstract_id)
        .add(claim_text)
        .add(gold_text)
        .add(retrieved_text)
        .add(judge_id)
        .add(judge_version);
    return hasher.hex();
}

std::string VerifyKey::content_hash() const {
    FieldHasher hasher;
    hasher.add("verify")
        .add(claim_id)
        .add(abstract_id)
        .add(claim_text)
        .add(evidence_text)
        .add(verifier_id)
        .add(verifier_version);
    return hasher.hex();
}

ServiceCache::ServiceCache(const std::string& path) : path_(path) {
    std::ifstream in(path);
    if (!in) return;  // first run; the file appears on the first store
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
        if (rec.is_discarded())
            throw std::runtime_error("corrupt cache record at " + path + ":" +
                                     std::to_string(line_no));
        std::string kind = rec.value("kind", "");
        if (kind == "align") {
            AlignmentEntry entry;
            entry.claim_id = rec.value("claim_id", "");
            entry.gold_abstract_id = rec.value("gold_abstract_id", "");
            entry.retrieved_abstract_id = rec.value("retrieved_abstract_id", "");
            entry.alignment.precision = rec.value("precision", 0.0);
            entry.alignment.recall = rec.value("recall", 0.0);
            entry.alignment.f1 = rec.value("f1", 0.0);
            if (rec.contains("reference_facts"))
                entry.alignment.reference_facts =
                    rec["reference_facts"].get<std::vector<std::string>>();
            if (rec.contains("candidate_facts"))
                entry.alignment.candidate_facts =
                    rec["candidate_facts"].get<std::vector<std::string>>();
            alignments_[rec.value("key", "")] = std::move(entry);
        } else if (kind == "verify") {
            VerifyEntry entry;
            entry.claim_id = rec.value("claim_id", "");
            entry.abstract_id = rec.value("abstract_id", "");
            entry.distribution.p_supports = rec.value("p_supports", 0.0);
            entry.distribution.p_refutes = rec.value("p_refutes", 0.0);
            entry.distribution.p_nei = rec.value("p_nei", 0.0);
            verdicts_[rec.value("key", "")] = std::move(entry);
        } else {
            throw std::runtime_error("unknown cache record kind at " + path + ":" +
                                     std::to_string(line_no));
        }
    }
}

std::optional<JudgeAlignment> ServiceCache::find_alignment(const AlignmentKey& key) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = alignments_.find(key.content_hash());
    if (it == alignments_.end()) return std::nullopt;
    // Hash collision guard: the stored identifiers must match.
    if (it->second.claim_id != key.claim_id ||
        it->second.gold_abstract_id != key.gold_abstract_id ||
        it->second.retrieved_abstract_id != key.retrieved_abstract_id)
        return std::nullopt;
    return it->second.alignment;
}

void ServiceCache::store_alignment(const AlignmentKey& key, const JudgeAlignment& alignment) {
    JsonWriter w;
    w.begin_object()
        .field("kind", "align")
        .field("key", key.content_hash())
        .field("claim_id", key.claim_id)
        .field("gold_abstract_id", key.gold_abstract_id)
        .field("retrieved_abstract_id", key.retrieved_abstract_id)
        .field("judge_id", key.judge_id)
        .field("judge_version", key.judge_version)
        .field_number("precision", alignment.precision)
        .field_number("recall", alignment.recall)
        .field_number("f1", alignment.f1)
        .key("reference_facts")
        .begin_array();
    for (const auto& fact : alignment.reference_facts) w.value(fact);
    w.end_array().key("candidate_facts").begin_array();
    for (const auto& fact : alignment.candidate_facts) w.value(fact);
    w.end_array().end_object();

    std::lock_guard<std::mutex> lock(mutex_);
    alignments_[key.content_hash()] =
        AlignmentEntry{key.claim_id, key.gold_abstract_id, key.retrieved_abstract_id, alignment};
    append_record(w.str());
}

std::optional<VerifierDistribution> ServiceCache::find_verdict(const VerifyKey& key) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = verdicts_.find(key.content_hash());
    if (it == verdicts_.end()) return std::nullopt;
    if (it->second.claim_id != key.claim_id || it->second.abstract_id != key.abstract_id)
        return std::nullopt;
    return it->second.distribution;
}

void ServiceCache::store_verdict(const VerifyKey& key, const VerifierDistribution& distribution) {
    JsonWriter w;
    w.begin_object()
        .field("kind", "verify")
        .field("key", key.content_hash())
        .field("claim_id", key.claim_id)
        .field("abstract_id", key.abstract_id)
        .field("verifier_id", key.verifier_id)
        .field("verifier_version", key.verifier_version)
        .field_number("p_supports", distribution.p_supports)
        .field_number("p_refutes", distribution.p_refutes)
        .field_number("p_nei", distribution.p_nei)
        .end_object();

    std::lock_guard<std::mutex> lock(mutex_);
    verdicts_[key.content_hash()] = VerifyEntry{key.claim_id, key.abstract_id, distribution};
    append_record(w.str());
}

std::size_t ServiceCache::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return alignments_.size() + verdicts_.size();
}

void ServiceCache::append_record(const std::string& line) {
    if (path_.empty()) return;
    std::ofstream out(path_, std::ios::app | std::ios::binary);
    if (!out) throw std::runtime_error("cannot append to cache file: " + path_);
    out << line << '\n';
}

}  // namespace facteval
