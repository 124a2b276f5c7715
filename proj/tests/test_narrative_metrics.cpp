#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "facteval/narrative_metrics.hpp"
#include "support/oracles.hpp"

using namespace facteval;

namespace {

NarrativeSet set_from(const std::vector<std::pair<std::string, std::vector<std::string>>>& items) {
    NarrativeSet set;
    for (const auto& [claim, codes] : items) {
        NarrativeAssignment assignment;
        assignment.claim_id = claim;
        for (const auto& code : codes)
            assignment.labels.push_back(parse_narrative_code_or_throw(code));
        std::sort(assignment.labels.begin(), assignment.labels.end());
        set.add(std::move(assignment));
    }
    return set;
}

LabelMatrix matrix_from(const std::vector<std::vector<int>>& rows, std::size_t n_labels) {
    LabelMatrix matrix;
    matrix.labels.assign(narrative_label_order().begin(),
                         narrative_label_order().begin() + static_cast<long>(n_labels));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        matrix.claim_ids.push_back("c" + std::to_string(i));
        std::vector<std::uint8_t> row(rows[i].begin(), rows[i].end());
        matrix.rows.push_back(std::move(row));
    }
    return matrix;
}

}  // namespace

TEST_CASE("binarize aligns matrices over the 33-column taxonomy order") {
    NarrativeSet gold = set_from({{"A", {"2_1"}}, {"B", {"2_1", "5_1"}}});
    NarrativeSet pred = set_from({{"A", {"2_1"}}});
    auto [gold_matrix, pred_matrix] = binarize(gold, pred);
    REQUIRE(gold_matrix.rows.size() == 2);
    REQUIRE(gold_matrix.labels.size() == 33);

    int col_2_1 = narrative_label_index({2, 1});
    int col_5_1 = narrative_label_index({5, 1});
    CHECK(gold_matrix.rows[0][col_2_1] == 1);
    CHECK(pred_matrix.rows[0][col_2_1] == 1);
    // B has exactly two positives in gold
    int positives = 0;
    for (auto cell : gold_matrix.rows[1]) positives += cell;
    CHECK(positives == 2);
    CHECK(gold_matrix.rows[1][col_5_1] == 1);
    // B unsubmitted: all-zero prediction row, flagged
    REQUIRE(pred_matrix.unsubmitted.size() == 1);
    CHECK(pred_matrix.unsubmitted.front() == "B");
    for (auto cell : pred_matrix.rows[1]) CHECK(cell == 0);
}

TEST_CASE("binarize rejects predictions for claims outside gold") {
    NarrativeSet gold = set_from({{"A", {"2_1"}}});
    NarrativeSet pred = set_from({{"B", {"2_1"}}});
    CHECK_THROWS_WITH_AS(binarize(gold, pred), doctest::Contains("B"), std::invalid_argument);
}

TEST_CASE("multilabel_scores: perfect predictor scores 1 on every aggregate") {
    NarrativeSet gold = set_from({{"A", {"2_1"}}, {"B", {"1_2", "3_3"}}, {"C", {"0_0"}}});
    auto [gold_matrix, pred_matrix] = binarize(gold, gold);
    NarrativeReport report = multilabel_scores(gold_matrix, pred_matrix);
    // macro over all 33 labels includes zero-support labels, so only the
    // present-labels variant reaches 1.0
    CHECK(report.macro_f1_present_labels == doctest::Approx(1.0));
    CHECK(report.micro_f1 == doctest::Approx(1.0));
    CHECK(report.weighted_f1 == doctest::Approx(1.0));
    CHECK(report.macro_f1_all_labels == doctest::Approx(4.0 / 33.0));
}

TEST_CASE("multilabel_scores matches the per-label counting oracle on random matrices") {
    std::mt19937 rng(606);
    std::uniform_int_distribution<int> claims_dist(1, 40);
    std::uniform_int_distribution<int> labels_dist(2, 8);
    std::bernoulli_distribution bit(0.25);
    for (int trial = 0; trial < 200; ++trial) {
        int n_claims = claims_dist(rng);
        int n_labels = labels_dist(rng);
        std::vector<std::vector<int>> gold_rows(n_claims, std::vector<int>(n_labels, 0));
        std::vector<std::vector<int>> pred_rows(n_claims, std::vector<int>(n_labels, 0));
        for (int i = 0; i < n_claims; ++i)
            for (int j = 0; j < n_labels; ++j) {
                gold_rows[i][j] = bit(rng);
                pred_rows[i][j] = bit(rng);
            }
        LabelMatrix gold = matrix_from(gold_rows, n_labels);
        LabelMatrix pred = matrix_from(pred_rows, n_labels);
        NarrativeReport engine = multilabel_scores(gold, pred);
        oracles::MultilabelOracle oracle = oracles::multilabel(gold_rows, pred_rows);
        CAPTURE(trial);
        CHECK(engine.macro_f1_all_labels == doctest::Approx(oracle.macro_f1_all).epsilon(1e-12));
        CHECK(engine.macro_f1_present_labels ==
              doctest::Approx(oracle.macro_f1_present).epsilon(1e-12));
        CHECK(engine.micro_f1 == doctest::Approx(oracle.micro_f1).epsilon(1e-12));
        CHECK(engine.weighted_f1 == doctest::Approx(oracle.weighted_f1).epsilon(1e-12));
        for (int j = 0; j < n_labels; ++j) {
            CHECK(engine.per_label[j].f1 == doctest::Approx(oracle.per_label[j].f1).epsilon(1e-12));
            CHECK(engine.per_label[j].support == oracle.per_label[j].support);
        }
    }
}

TEST_CASE("hand-tabulated off-by-one fixture") {
    // 3 claims, 4 active labels; one prediction flips 2_1 -> 2_3 on claim c2.
    NarrativeSet gold = set_from({{"c0", {"2_1", "5_1"}}, {"c1", {"1_2"}}, {"c2", {"2_1"}}});
    NarrativeSet pred = set_from({{"c0", {"2_1", "5_1"}}, {"c1", {"1_2"}}, {"c2", {"2_3"}}});
    auto [gold_matrix, pred_matrix] = binarize(gold, pred);
    NarrativeReport report = multilabel_scores(gold_matrix, pred_matrix);
    // 2_1: TP=1 FP=0 FN=1 -> P=1, R=.5, F1=2/3; 2_3: TP=0 FP=1 -> 0; 1_2, 5_1 perfect.
    CHECK(report.per_label[narrative_label_index({2, 1})].f1 == doctest::Approx(2.0 / 3.0));
    CHECK(report.per_label[narrative_label_index({2, 3})].f1 == doctest::Approx(0.0));
    CHECK(report.per_label[narrative_label_index({1, 2})].f1 == doctest::Approx(1.0));
    CHECK(report.per_label[narrative_label_index({5, 1})].f1 == doctest::Approx(1.0));
    // weighted: supports {2_1:2, 1_2:1, 5_1:1} -> (2*(2/3) + 1 + 1) / 4
    CHECK(report.weighted_f1 == doctest::Approx((2.0 * (2.0 / 3.0) + 2.0) / 4.0));
    // micro: TP=3, FP=1, FN=1 -> P=3/4, R=3/4
    CHECK(report.micro_f1 == doctest::Approx(0.75));
}

TEST_CASE("all-0_0 predictor on a 71.5%-prevalence gold set: micro high, macro low") {
    // 200 claims, 143 with gold 0_0 (71.5%), 57 spread over other labels.
    std::vector<std::pair<std::string, std::vector<std::string>>> gold_items, pred_items;
    const std::vector<std::string> minority = {"2_1", "5_1", "1_2", "4_2", "3_3"};
    for (int i = 0; i < 200; ++i) {
        std::string id = "c" + std::to_string(100 + i);  // fixed-width sorts cleanly
        if (i < 143)
            gold_items.push_back({id, {"0_0"}});
        else
            gold_items.push_back({id, {minority[static_cast<std::size_t>(i) % minority.size()]}});
        pred_items.push_back({id, {"0_0"}});
    }
    auto [gold_matrix, pred_matrix] = binarize(set_from(gold_items), set_from(pred_items));
    NarrativeReport report = multilabel_scores(gold_matrix, pred_matrix);
    // micro: TP=143, FP=57, FN=57 -> F1 = 2*143/(2*143+57+57) = 0.71500
    CHECK(report.micro_f1 == doctest::Approx(2.0 * 143 / (2.0 * 143 + 57 + 57)));
    // macro: only 0_0 has nonzero F1 (=~0.834), divided over all 33 labels
    double f1_00 = 2.0 * (143.0 / 200.0) * 1.0 / (143.0 / 200.0 + 1.0);
    CHECK(report.macro_f1_all_labels == doctest::Approx(f1_00 / 33.0));
    CHECK(report.micro_f1 > report.macro_f1_all_labels);
    CHECK(report.micro_f1 > report.macro_f1_present_labels);
}

TEST_CASE("swapping two label columns consistently leaves aggregates unchanged") {
    std::mt19937 rng(9);
    std::bernoulli_distribution bit(0.3);
    std::vector<std::vector<int>> gold_rows(12, std::vector<int>(6, 0));
    std::vector<std::vector<int>> pred_rows(12, std::vector<int>(6, 0));
    for (auto& row : gold_rows)
        for (auto& cell : row) cell = bit(rng);
    for (auto& row : pred_rows)
        for (auto& cell : row) cell = bit(rng);

    LabelMatrix gold = matrix_from(gold_rows, 6);
    LabelMatrix pred = matrix_from(pred_rows, 6);
    NarrativeReport before = multilabel_scores(gold, pred);

    for (auto* rows : {&gold_rows, &pred_rows})
        for (auto& row : *rows) std::swap(row[1], row[4]);
    LabelMatrix gold_swapped = matrix_from(gold_rows, 6);
    LabelMatrix pred_swapped = matrix_from(pred_rows, 6);
    NarrativeReport after = multilabel_scores(gold_swapped, pred_swapped);

    CHECK(before.macro_f1_all_labels == doctest::Approx(after.macro_f1_all_labels).epsilon(1e-15));
    CHECK(before.micro_f1 == doctest::Approx(after.micro_f1).epsilon(1e-15));
    CHECK(before.weighted_f1 == doctest::Approx(after.weighted_f1).epsilon(1e-15));
}

TEST_CASE("an all-zero column changes macro F1: the zero-support convention is load-bearing") {
    std::vector<std::vector<int>> gold_rows = {{1, 0}, {0, 1}, {1, 1}};
    std::vector<std::vector<int>> pred_rows = {{1, 0}, {0, 1}, {1, 0}};
    NarrativeReport narrow =
        multilabel_scores(matrix_from(gold_rows, 2), matrix_from(pred_rows, 2));
    for (auto* rows : {&gold_rows, &pred_rows})
        for (auto& row : *rows) row.push_back(0);
    NarrativeReport wide =
        multilabel_scores(matrix_from(gold_rows, 3), matrix_from(pred_rows, 3));
    CHECK(narrow.macro_f1_all_labels != wide.macro_f1_all_labels);
    CHECK(wide.macro_f1_all_labels ==
          doctest::Approx(narrow.macro_f1_all_labels * 2.0 / 3.0).epsilon(1e-12));
    // micro is untouched by empty columns
    CHECK(narrow.micro_f1 == doctest::Approx(wide.micro_f1).epsilon(1e-15));
}

TEST_CASE("shape mismatch is rejected") {
    LabelMatrix a = matrix_from({{1, 0}}, 2);
    LabelMatrix b = matrix_from({{1, 0}, {0, 1}}, 2);
    CHECK_THROWS_AS(multilabel_scores(a, b), std::invalid_argument);
}
