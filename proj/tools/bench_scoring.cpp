// Benchmark: serial reference vs OpenMP-parallel scoring kernels on a
// synthetic corpus. Verifies that both paths produce identical aggregates
// before reporting timings.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "facteval/corpus.hpp"
#include "facteval/iaa.hpp"
#include "facteval/retrieval_metrics.hpp"

using namespace facteval;

namespace {

std::string claim_name(int i) { return "c" + std::to_string(i); }
std::string abstract_name(int i) { return "a" + std::to_string(i); }

struct Fixture {
    GoldSet gold;
    RetrievalSubmission submission;
};

Fixture make_retrieval_fixture(int claims, int abstracts, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> abstract_dist(0, abstracts - 1);
    std::uniform_int_distribution<int> judged_dist(2, 8);
    std::uniform_int_distribution<int> label_dist(0, 2);

    Fixture fx;
    for (int c = 0; c < claims; ++c) {
        std::string claim = claim_name(c);
        int judged = judged_dist(rng);
        std::vector<std::string> pool_ids;
        for (int j = 0; j < judged; ++j) {
            std::string abstract = abstract_name(abstract_dist(rng));
            bool seen = false;
            for (const auto& id : pool_ids)
                if (id == abstract) seen = true;
            if (seen) continue;
            pool_ids.push_back(abstract);
            VerdictLabel label = static_cast<VerdictLabel>(label_dist(rng));
            fx.gold.add({claim, abstract, label});
        }
        ClaimRanking ranking;
        ranking.claim_id = claim;
        for (int r = 0; r < 5; ++r)
            ranking.ranked.push_back({abstract_name(abstract_dist(rng)) + "_" +
                                          std::to_string(r),
                                      std::nullopt});
        // Re-point some ranks at judged abstracts so recall is non-trivial.
        for (std::size_t r = 0; r < std::min<std::size_t>(2, pool_ids.size()); ++r)
            ranking.ranked[r].abstract_id = pool_ids[r];
        fx.submission.add(std::move(ranking));
    }
    return fx;
}

AnnotationMatrix make_annotation_fixture(int items, int annotators, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto& order = narrative_label_order();
    std::uniform_int_distribution<int> label_dist(1, static_cast<int>(order.size()) - 1);
    std::bernoulli_distribution flip(0.15);

    AnnotationMatrix matrix;
    for (int a = 0; a < annotators; ++a) matrix.annotators.push_back("ann" + std::to_string(a));
    for (int i = 0; i < items; ++i) {
        matrix.items.push_back(claim_name(i));
        NarrativeLabel base = order[static_cast<std::size_t>(label_dist(rng))];
        std::vector<std::vector<NarrativeLabel>> row;
        for (int a = 0; a < annotators; ++a) {
            NarrativeLabel chosen =
                flip(rng) ? order[static_cast<std::size_t>(label_dist(rng))] : base;
            row.push_back({chosen});
        }
        matrix.cells.push_back(std::move(row));
    }
    return matrix;
}

template <typename Fn>
double time_ms(Fn&& fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    int claims = argc > 1 ? std::atoi(argv[1]) : 50000;
    int items = argc > 2 ? std::atoi(argv[2]) : 4000;

    std::printf("retrieval scoring: %d claims\n", claims);
    Fixture fx = make_retrieval_fixture(claims, claims * 4, 7);
    RetrievalScoreReport serial, parallel;
    double t_serial = time_ms(
        [&] { serial = score_retrieval(fx.submission, fx.gold, {2, 5}, ExecMode::Serial); });
    double t_parallel = time_ms(
        [&] { parallel = score_retrieval(fx.submission, fx.gold, {2, 5}, ExecMode::Parallel); });
    bool match = serial.aggregate_bpref == parallel.aggregate_bpref &&
                 serial.aggregate_recall == parallel.aggregate_recall;
    std::printf("  serial   %8.1f ms (bpref %.6f)\n", t_serial, serial.aggregate_bpref);
    std::printf("  parallel %8.1f ms (bpref %.6f)\n", t_parallel, parallel.aggregate_bpref);
    std::printf("  results identical: %s\n", match ? "yes" : "NO");
    if (!match) return 1;

    std::printf("agreement statistics: %d items x 4 annotators\n", items);
    AnnotationMatrix matrix = make_annotation_fixture(items, 4, 11);
    AgreementReport rep_serial, rep_parallel;
    double t_iaa_serial =
        time_ms([&] { rep_serial = agreement_report(matrix, false, ExecMode::Serial); });
    double t_iaa_parallel =
        time_ms([&] { rep_parallel = agreement_report(matrix, false, ExecMode::Parallel); });
    bool iaa_match = rep_serial.overall_alpha == rep_parallel.overall_alpha &&
                     rep_serial.prevalence_weighted_alpha == rep_parallel.prevalence_weighted_alpha;
    for (std::size_t j = 0; j < rep_serial.per_label.size() && iaa_match; ++j)
        iaa_match = rep_serial.per_label[j].alpha == rep_parallel.per_label[j].alpha;
    std::printf("  serial   %8.1f ms (overall alpha %.6f)\n", t_iaa_serial,
                rep_serial.overall_alpha.value_or(-1.0));
    std::printf("  parallel %8.1f ms (overall alpha %.6f)\n", t_iaa_parallel,
                rep_parallel.overall_alpha.value_or(-1.0));
    std::printf("  results identical: %s\n", iaa_match ? "yes" : "NO");
    return iaa_match ? 0 : 1;
}
