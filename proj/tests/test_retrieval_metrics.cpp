#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "facteval/retrieval_metrics.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace facteval;

namespace {

EvidencePool make_pool(const std::vector<std::pair<std::string, VerdictLabel>>& judgments) {
    GoldSet gold;
    for (const auto& [abstract, label] : judgments) gold.add({"c", abstract, label});
    return *gold.find("c");
}

}  // namespace

TEST_CASE("recall_at_k on the worked examples") {
    EvidencePool pool = make_pool({{"X", VerdictLabel::Supports}, {"Y", VerdictLabel::Refutes}});
    CHECK(recall_at_k({"X", "A", "Y", "B", "C"}, pool, 5) == doctest::Approx(1.0));
    CHECK(recall_at_k({"A", "X", "B", "C", "D"}, pool, 2) == doctest::Approx(0.5));
    EvidencePool single = make_pool({{"X", VerdictLabel::Supports}});
    CHECK(recall_at_k({"A", "B", "C", "D", "E"}, single, 5) == doctest::Approx(0.0));
    CHECK_THROWS_AS(recall_at_k({"A"}, single, 0), std::invalid_argument);
}

TEST_CASE("recall is monotone non-decreasing in k") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        auto claim = fixtures::random_scored_claim(rng, trial, 8, 12);
        GoldSet gold = fixtures::gold_from({claim});
        const EvidencePool& pool = *gold.find(claim.claim);
        double previous = 0.0;
        for (int k = 1; k <= 12; ++k) {
            double value = recall_at_k(claim.ranked, pool, k);
            CHECK(value >= previous);
            previous = value;
        }
    }
}

TEST_CASE("bpref on the worked examples") {
    SUBCASE("perfect ordering scores 1") {
        EvidencePool pool =
            make_pool({{"r1", VerdictLabel::Supports}, {"r2", VerdictLabel::Refutes}});
        CHECK(bpref({"r1", "r2"}, pool) == doctest::Approx(1.0));
    }
    SUBCASE("single relevant below the single judged non-relevant scores 0") {
        EvidencePool pool = make_pool({{"r", VerdictLabel::Supports}, {"N", VerdictLabel::NEI}});
        CHECK(bpref({"N", "r"}, pool) == doctest::Approx(0.0));
    }
    SUBCASE("one judged non-relevant above two relevant halves each term") {
        EvidencePool pool = make_pool({{"rel1", VerdictLabel::Supports},
                                       {"rel2", VerdictLabel::Supports},
                                       {"N", VerdictLabel::NEI}});
        CHECK(bpref({"N", "rel1", "rel2"}, pool) == doctest::Approx(0.5));
    }
}

TEST_CASE("bpref counters respect 0 <= n_above <= R") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        auto claim = fixtures::random_scored_claim(rng, trial, 10, 20);
        GoldSet gold = fixtures::gold_from({claim});
        const EvidencePool& pool = *gold.find(claim.claim);
        BprefCounters counters = bpref_counters(claim.ranked, pool);
        CHECK(counters.relevant_total == static_cast<int>(pool.evidentiary.size()));
        for (const auto& [doc, n_above] : counters.n_above) {
            CHECK(n_above >= 0);
            CHECK(n_above <= counters.relevant_total);
        }
    }
}

TEST_CASE("bpref equals the literal-definition oracle on random claims") {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 300; ++trial) {
        auto claim = fixtures::random_scored_claim(rng, trial, 12, 30);
        GoldSet gold = fixtures::gold_from({claim});
        const EvidencePool& pool = *gold.find(claim.claim);
        std::set<std::string> relevant(pool.evidentiary_ids.begin(), pool.evidentiary_ids.end());
        std::set<std::string> nonrelevant(pool.nei_ids.begin(), pool.nei_ids.end());
        double engine = bpref(claim.ranked, pool);
        double oracle = oracles::bpref(claim.ranked, relevant, nonrelevant);
        CAPTURE(trial);
        CHECK(engine == oracle);  // exact, both are short rational sums
    }
}

TEST_CASE("bpref is invariant to inserting unjudged documents") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> count_dist(1, 15);
    for (int trial = 0; trial < 100; ++trial) {
        auto claim = fixtures::random_scored_claim(rng, trial, 8, 15);
        GoldSet gold = fixtures::gold_from({claim});
        const EvidencePool& pool = *gold.find(claim.claim);
        double before = bpref(claim.ranked, pool);

        std::vector<std::string> padded = claim.ranked;
        int insertions = count_dist(rng);
        for (int i = 0; i < insertions; ++i) {
            std::uniform_int_distribution<std::size_t> pos_dist(0, padded.size());
            padded.insert(padded.begin() + static_cast<long>(pos_dist(rng)),
                          "pad" + std::to_string(trial) + "_" + std::to_string(i));
        }
        CHECK(bpref(padded, pool) == before);
    }
}

TEST_CASE("bpref is 1 when all relevant retrieved above all judged non-relevant") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        auto claim = fixtures::random_scored_claim(rng, trial, 8, 0);
        GoldSet gold = fixtures::gold_from({claim});
        const EvidencePool& pool = *gold.find(claim.claim);
        std::vector<std::string> ranked;
        for (const auto& judgment : pool.evidentiary) ranked.push_back(judgment.abstract_id);
        for (const auto& id : pool.nei_ids) ranked.push_back(id);
        CHECK(bpref(ranked, pool) == doctest::Approx(1.0));
    }
}

TEST_CASE("score_task11 composes the published aggregates") {
    CHECK(score_task11(0.403, 0.459) == doctest::Approx(0.431).epsilon(1e-9));
    CHECK(score_task11(0.443, 0.489) == doctest::Approx(0.466).epsilon(1e-9));
    CHECK(score_task11(0.0, 0.0) == 0.0);
}

TEST_CASE("score_retrieval aggregates, skips only-NEI claims, flags unsubmitted") {
    std::vector<fixtures::ScoredClaim> claims = {
        {"c1", {{"x", VerdictLabel::Supports}, {"n", VerdictLabel::NEI}}, {"x", "n"}},
        {"c2", {{"y", VerdictLabel::Refutes}}, {"q", "y"}},
        {"c3", {{"m", VerdictLabel::NEI}}, {"m"}},          // only NEI: skipped
        {"c4", {{"z", VerdictLabel::Supports}}, {}},        // in gold, unsubmitted
    };
    GoldSet gold = fixtures::gold_from(claims);
    std::vector<fixtures::ScoredClaim> submitted(claims.begin(), claims.begin() + 3);
    RetrievalSubmission submission = fixtures::submission_from(submitted);

    RetrievalScoreReport report = score_retrieval(submission, gold);
    CHECK(report.evaluated_claims == 3);  // c1, c2, c4
    CHECK(report.skipped_no_evidentiary == 1);
    REQUIRE(report.unsubmitted.size() == 1);
    CHECK(report.unsubmitted.front() == "c4");
    // c1: R@5 = 1, bpref = 1;  c2: R@5 = 1, bpref = 1 (q unjudged);  c4: 0, 0
    CHECK(report.aggregate_recall.at(5) == doctest::Approx(2.0 / 3.0));
    CHECK(report.aggregate_bpref == doctest::Approx(2.0 / 3.0));
    REQUIRE(report.score_1_1.has_value());
    CHECK(*report.score_1_1 == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("submitted-but-empty ranking scores zero and is flagged") {
    GoldSet gold;
    gold.add({"c1", "x", VerdictLabel::Supports});
    RetrievalSubmission submission;
    submission.add({"c1", {}});
    RetrievalScoreReport report = score_retrieval(submission, gold);
    REQUIRE(report.per_claim.size() == 1);
    CHECK(report.per_claim[0].submitted);
    CHECK(report.per_claim[0].empty_ranking);
    CHECK(report.per_claim[0].recall_at.at(5) == 0.0);
    CHECK(report.per_claim[0].bpref == 0.0);
    CHECK(report.unsubmitted.empty());
}

TEST_CASE("parallel scoring kernel matches the serial reference bit for bit") {
    std::mt19937 rng(2024);
    std::vector<fixtures::ScoredClaim> claims;
    for (int i = 0; i < 200; ++i) claims.push_back(fixtures::random_scored_claim(rng, i, 10, 20));
    GoldSet gold = fixtures::gold_from(claims);
    RetrievalSubmission submission = fixtures::submission_from(claims);

    RetrievalScoreReport serial = score_retrieval(submission, gold, {2, 5}, ExecMode::Serial);
    RetrievalScoreReport parallel = score_retrieval(submission, gold, {2, 5}, ExecMode::Parallel);
    CHECK(serial.aggregate_bpref == parallel.aggregate_bpref);
    CHECK(serial.aggregate_recall == parallel.aggregate_recall);
    REQUIRE(serial.per_claim.size() == parallel.per_claim.size());
    for (std::size_t i = 0; i < serial.per_claim.size(); ++i) {
        CHECK(serial.per_claim[i].claim_id == parallel.per_claim[i].claim_id);
        CHECK(serial.per_claim[i].bpref == parallel.per_claim[i].bpref);
        CHECK(serial.per_claim[i].recall_at == parallel.per_claim[i].recall_at);
    }
}
