#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <random>
#include <set>

#include "facteval/corpus.hpp"
#include "facteval/labels.hpp"
#include "support/fixtures.hpp"

using namespace facteval;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "facteval_corpus_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path write_temp(const std::string& name, const std::string& content) {
    fs::path path = temp_dir() / name;
    fixtures::write_file(path, content);
    return path;
}

}  // namespace

TEST_CASE("verdict parsing is case-insensitive on the canonical strings") {
    CHECK(parse_verdict("supports") == VerdictLabel::Supports);
    CHECK(parse_verdict("SUPPORTS") == VerdictLabel::Supports);
    CHECK(parse_verdict("Refutes") == VerdictLabel::Refutes);
    CHECK(parse_verdict("nei") == VerdictLabel::NEI);
    CHECK(parse_verdict("NEI") == VerdictLabel::NEI);
    CHECK(parse_verdict("Not Enough Information") == VerdictLabel::NEI);
    CHECK_FALSE(parse_verdict("maybe").has_value());
    CHECK_FALSE(parse_verdict("").has_value());
}

TEST_CASE("narrative taxonomy has exactly 33 codes in group-major order") {
    const auto& order = narrative_label_order();
    REQUIRE(order.size() == 33);
    CHECK(order.front() == kNoDisinformation);
    for (std::size_t j = 0; j < order.size(); ++j)
        CHECK(narrative_label_index(order[j]) == static_cast<int>(j));
    // group boundaries
    CHECK(order[1] == NarrativeLabel{1, 0});
    CHECK(order[9] == NarrativeLabel{1, 8});
    CHECK(order[10] == NarrativeLabel{2, 0});
    CHECK(order[32] == NarrativeLabel{5, 3});
}

TEST_CASE("parse_narrative_code accepts exactly the 33 valid codes") {
    const auto& order = narrative_label_order();
    std::set<std::string> valid;
    for (const auto& label : order) {
        auto parsed = parse_narrative_code(label.code());
        REQUIRE(parsed.has_value());
        CHECK(*parsed == label);
        valid.insert(label.code());
    }
    CHECK(valid.size() == 33);

    CHECK(parse_narrative_code("2_1") == NarrativeLabel{2, 1});
    CHECK(parse_narrative_code("0_0") == NarrativeLabel{0, 0});
    CHECK(narrative_description(NarrativeLabel{2, 1}) == "It's natural cycles/variation");
    CHECK_FALSE(parse_narrative_code("4_7").has_value());
    CHECK_FALSE(parse_narrative_code("6_0").has_value());
    CHECK_FALSE(parse_narrative_code("1_9").has_value());
    CHECK_FALSE(parse_narrative_code("10").has_value());
    CHECK_THROWS_AS(parse_narrative_code_or_throw("4_7"), std::invalid_argument);

    // 100 random invalid strings are all rejected.
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> len_dist(0, 6);
    std::uniform_int_distribution<int> char_dist(0, 12);
    const std::string alphabet = "0123456789_ab";
    int tested = 0;
    while (tested < 100) {
        std::string candidate;
        int len = len_dist(rng);
        for (int i = 0; i < len; ++i) candidate += alphabet[char_dist(rng)];
        if (valid.count(candidate)) continue;
        CAPTURE(candidate);
        CHECK_FALSE(parse_narrative_code(candidate).has_value());
        ++tested;
    }
}

TEST_CASE("load_corpus counts records and validates ids") {
    SUBCASE("well-formed files") {
        auto claims = write_temp("claims_ok.jsonl",
                                 "{\"claim_id\":\"c1\",\"text\":\"t1\"}\n"
                                 "{\"claim_id\":\"c2\",\"text\":\"t2\"}\n");
        auto abstracts = write_temp("abstracts_ok.jsonl",
                                    "{\"abstract_id\":\"a1\",\"text\":\"x\"}\n"
                                    "{\"abstract_id\":\"a2\",\"title\":\"T\",\"text\":\"y\"}\n"
                                    "{\"abstract_id\":\"a3\",\"text\":\"z\"}\n");
        IssueList issues;
        Corpus corpus = load_corpus(claims.string(), abstracts.string(), issues);
        CHECK_FALSE(issues.has_errors());
        CHECK(corpus.claims().size() == 2);
        CHECK(corpus.abstracts().size() == 3);
        CHECK(corpus.find_abstract("a2")->title == "T");
    }

    SUBCASE("duplicate abstract id names both lines") {
        auto claims = write_temp("claims_min.jsonl", "{\"claim_id\":\"c1\",\"text\":\"t\"}\n");
        auto abstracts = write_temp("abstracts_dup.jsonl",
                                    "{\"abstract_id\":\"a1\",\"text\":\"x\"}\n"
                                    "{\"abstract_id\":\"a2\",\"text\":\"y\"}\n"
                                    "{\"abstract_id\":\"a1\",\"text\":\"z\"}\n");
        IssueList issues;
        load_corpus(claims.string(), abstracts.string(), issues);
        REQUIRE(issues.has_errors());
        bool found = false;
        for (const auto& issue : issues.all())
            if (issue.message.find("duplicate abstract_id") != std::string::npos) {
                found = true;
                CHECK(issue.line == 3);
                CHECK(issue.message.find("line 1") != std::string::npos);
            }
        CHECK(found);
    }

    SUBCASE("empty file loads zero items with a warning") {
        auto claims = write_temp("claims_empty.jsonl", "");
        auto abstracts = write_temp("abstracts_empty.jsonl", "");
        IssueList issues;
        Corpus corpus = load_corpus(claims.string(), abstracts.string(), issues);
        CHECK_FALSE(issues.has_errors());
        CHECK(corpus.claims().empty());
        CHECK(issues.size() == 2);  // two warnings
    }

    SUBCASE("malformed line reports its number") {
        auto claims = write_temp("claims_bad.jsonl",
                                 "{\"claim_id\":\"c1\",\"text\":\"t\"}\n"
                                 "this is not json\n");
        auto abstracts = write_temp("abstracts_min.jsonl",
                                    "{\"abstract_id\":\"a1\",\"text\":\"x\"}\n");
        IssueList issues;
        load_corpus(claims.string(), abstracts.string(), issues);
        REQUIRE(issues.has_errors());
        CHECK(issues.all().front().line == 2);
    }

    SUBCASE("strict mode rejects unknown fields") {
        auto claims = write_temp("claims_extra.jsonl",
                                 "{\"claim_id\":\"c1\",\"text\":\"t\",\"note\":\"x\"}\n");
        auto abstracts = write_temp("abstracts_min2.jsonl",
                                    "{\"abstract_id\":\"a1\",\"text\":\"x\"}\n");
        IssueList tolerant;
        load_corpus(claims.string(), abstracts.string(), tolerant, /*strict=*/false);
        CHECK_FALSE(tolerant.has_errors());
        IssueList strict;
        load_corpus(claims.string(), abstracts.string(), strict, /*strict=*/true);
        CHECK(strict.has_errors());
    }
}

namespace {

Corpus small_corpus() {
    Corpus corpus;
    corpus.add_claim({"A", "claim a"});
    corpus.add_claim({"B", "claim b"});
    corpus.add_abstract({"X", std::nullopt, "abstract x"});
    corpus.add_abstract({"Y", std::nullopt, "abstract y"});
    corpus.add_abstract({"Z", std::nullopt, "abstract z"});
    return corpus;
}

}  // namespace

TEST_CASE("load_gold partitions pools into evidentiary and NEI") {
    Corpus corpus = small_corpus();
    auto gold_path = write_temp("gold_ok.jsonl",
                                "{\"claim_id\":\"A\",\"abstract_id\":\"X\",\"label\":\"supports\"}\n"
                                "{\"claim_id\":\"A\",\"abstract_id\":\"Y\",\"label\":\"SUPPORTS\"}\n"
                                "{\"claim_id\":\"A\",\"abstract_id\":\"Z\",\"label\":\"nei\"}\n");
    IssueList issues;
    GoldSet gold = load_gold(gold_path.string(), corpus, issues);
    REQUIRE_FALSE(issues.has_errors());
    const EvidencePool* pool = gold.find("A");
    REQUIRE(pool != nullptr);
    CHECK(pool->gold.size() == 3);
    CHECK(pool->evidentiary.size() == 2);
    CHECK(pool->nei_ids.count("Z") == 1);
    // gold = evidentiary union NEI, disjoint
    CHECK(pool->evidentiary_ids.size() + pool->nei_ids.size() == pool->judged_ids.size());
    for (const auto& id : pool->evidentiary_ids) CHECK(pool->nei_ids.count(id) == 0);

    SUBCASE("duplicate pair is an error") {
        auto dup_path = write_temp("gold_dup.jsonl",
                                   "{\"claim_id\":\"A\",\"abstract_id\":\"X\",\"label\":\"supports\"}\n"
                                   "{\"claim_id\":\"A\",\"abstract_id\":\"X\",\"label\":\"nei\"}\n");
        IssueList dup_issues;
        load_gold(dup_path.string(), corpus, dup_issues);
        CHECK(dup_issues.has_errors());
    }
    SUBCASE("unknown ids are errors") {
        auto bad_path = write_temp("gold_bad.jsonl",
                                   "{\"claim_id\":\"missing\",\"abstract_id\":\"X\",\"label\":\"nei\"}\n"
                                   "{\"claim_id\":\"A\",\"abstract_id\":\"missing\",\"label\":\"nei\"}\n"
                                   "{\"claim_id\":\"A\",\"abstract_id\":\"X\",\"label\":\"sort of\"}\n");
        IssueList bad_issues;
        load_gold(bad_path.string(), corpus, bad_issues);
        CHECK(bad_issues.size() == 3);
    }
}

TEST_CASE("load_retrieval_submission validates ranks, caps and ids") {
    Corpus corpus = small_corpus();
    auto gold_path = write_temp("gold_sub.jsonl",
                                "{\"claim_id\":\"A\",\"abstract_id\":\"X\",\"label\":\"supports\"}\n"
                                "{\"claim_id\":\"B\",\"abstract_id\":\"Y\",\"label\":\"refutes\"}\n");
    IssueList issues;
    GoldSet gold = load_gold(gold_path.string(), corpus, issues);

    SUBCASE("accepted submission with positional ranks") {
        auto path = write_temp("sub_ok.jsonl",
                               "{\"claim_id\":\"A\",\"ranked\":[{\"abstract_id\":\"X\"},"
                               "{\"abstract_id\":\"Y\",\"label\":\"refutes\"}]}\n");
        IssueList sub_issues;
        RetrievalSubmission sub =
            load_retrieval_submission(path.string(), corpus, gold, sub_issues);
        CHECK_FALSE(sub_issues.has_errors());
        REQUIRE(sub.find("A") != nullptr);
        CHECK(sub.find("A")->ranked.size() == 2);
        // claim B is in gold but unsubmitted
        REQUIRE(sub.unsubmitted().size() == 1);
        CHECK(sub.unsubmitted().front() == "B");
    }

    SUBCASE("explicit rank gap is an error") {
        auto path = write_temp("sub_gap.jsonl",
                               "{\"claim_id\":\"A\",\"ranked\":["
                               "{\"abstract_id\":\"X\",\"rank\":1},"
                               "{\"abstract_id\":\"Y\",\"rank\":2},"
                               "{\"abstract_id\":\"Z\",\"rank\":4}]}\n");
        IssueList sub_issues;
        load_retrieval_submission(path.string(), corpus, gold, sub_issues);
        CHECK(sub_issues.has_errors());
    }

    SUBCASE("cap is enforced") {
        std::string line = "{\"claim_id\":\"A\",\"ranked\":[";
        for (int i = 0; i < 6; ++i) {
            if (i) line += ",";
            line += "{\"abstract_id\":\"X" + std::to_string(i) + "\"}";
        }
        line += "]}\n";
        auto path = write_temp("sub_cap.jsonl", line);
        IssueList sub_issues;
        load_retrieval_submission(path.string(), corpus, gold, sub_issues, /*rank_cap=*/5);
        CHECK(sub_issues.has_errors());
    }

    SUBCASE("duplicate abstract in ranking is an error") {
        auto path = write_temp("sub_dupdoc.jsonl",
                               "{\"claim_id\":\"A\",\"ranked\":[{\"abstract_id\":\"X\"},"
                               "{\"abstract_id\":\"X\"}]}\n");
        IssueList sub_issues;
        load_retrieval_submission(path.string(), corpus, gold, sub_issues);
        CHECK(sub_issues.has_errors());
    }
}

TEST_CASE("narrative gold enforces label-set invariants") {
    Corpus corpus = small_corpus();
    SUBCASE("0_0 exclusivity") {
        auto path = write_temp("ng_bad.jsonl",
                               "{\"claim_id\":\"A\",\"labels\":[\"0_0\",\"2_1\"]}\n");
        IssueList issues;
        load_narrative_gold(path.string(), corpus, issues);
        CHECK(issues.has_errors());
    }
    SUBCASE("empty label set rejected") {
        auto path = write_temp("ng_empty.jsonl", "{\"claim_id\":\"A\",\"labels\":[]}\n");
        IssueList issues;
        load_narrative_gold(path.string(), corpus, issues);
        CHECK(issues.has_errors());
    }
    SUBCASE("valid multi-label set kept in taxonomy order") {
        auto path = write_temp("ng_ok.jsonl",
                               "{\"claim_id\":\"A\",\"labels\":[\"5_1\",\"2_1\"]}\n");
        IssueList issues;
        NarrativeSet set = load_narrative_gold(path.string(), corpus, issues);
        REQUIRE_FALSE(issues.has_errors());
        REQUIRE(set.find("A") != nullptr);
        CHECK(set.find("A")->labels.front() == NarrativeLabel{2, 1});
        CHECK(set.find("A")->labels.back() == NarrativeLabel{5, 1});
    }
}

TEST_CASE("canonicalization is idempotent for every input kind") {
    Corpus corpus = small_corpus();
    auto gold_path = write_temp("gold_canon.jsonl",
                                "{\"claim_id\":\"A\",\"abstract_id\":\"X\",\"label\":\"SUPPORTS\"}\n"
                                "{\"claim_id\":\"B\",\"abstract_id\":\"Y\",\"label\":\"not enough information\"}\n");
    IssueList issues;
    GoldSet gold = load_gold(gold_path.string(), corpus, issues);
    REQUIRE_FALSE(issues.has_errors());

    // claims + abstracts
    std::string canon_claims = canonical_claims(corpus);
    std::string canon_abstracts = canonical_abstracts(corpus);
    auto claims2 = write_temp("claims_round.jsonl", canon_claims);
    auto abstracts2 = write_temp("abstracts_round.jsonl", canon_abstracts);
    IssueList issues2;
    Corpus corpus2 = load_corpus(claims2.string(), abstracts2.string(), issues2);
    CHECK(canonical_claims(corpus2) == canon_claims);
    CHECK(canonical_abstracts(corpus2) == canon_abstracts);

    // gold (labels normalize to lowercase canonical names, then stay fixed)
    std::string canon_gold = canonical_gold(gold);
    auto gold2_path = write_temp("gold_round.jsonl", canon_gold);
    IssueList issues3;
    GoldSet gold2 = load_gold(gold2_path.string(), corpus, issues3);
    CHECK(canonical_gold(gold2) == canon_gold);

    // retrieval submission
    auto sub_path = write_temp("sub_canon.jsonl",
                               "{\"claim_id\":\"A\",\"ranked\":[{\"abstract_id\":\"X\",\"label\":\"Supports\"},"
                               "{\"abstract_id\":\"Z\"}]}\n");
    IssueList issues4;
    RetrievalSubmission sub = load_retrieval_submission(sub_path.string(), corpus, gold, issues4);
    std::string canon_sub = canonical_retrieval_submission(sub);
    auto sub2_path = write_temp("sub_round.jsonl", canon_sub);
    IssueList issues5;
    RetrievalSubmission sub2 =
        load_retrieval_submission(sub2_path.string(), corpus, gold, issues5);
    CHECK(canonical_retrieval_submission(sub2) == canon_sub);

    // narrative set
    auto ng_path = write_temp("ng_canon.jsonl",
                              "{\"claim_id\":\"B\",\"labels\":[\"5_1\",\"1_2\"]}\n");
    IssueList issues6;
    NarrativeSet ng = load_narrative_gold(ng_path.string(), corpus, issues6);
    std::string canon_ng = canonical_narrative_set(ng);
    auto ng2_path = write_temp("ng_round.jsonl", canon_ng);
    IssueList issues7;
    NarrativeSet ng2 = load_narrative_gold(ng2_path.string(), corpus, issues7);
    CHECK(canonical_narrative_set(ng2) == canon_ng);
}
