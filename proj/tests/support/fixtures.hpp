// Synthetic fixture builders shared across test binaries.

#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "facteval/corpus.hpp"
#include "facteval/iaa.hpp"

namespace fixtures {

using namespace facteval;

inline std::string claim_id(int i) { return "c" + std::to_string(i); }
inline std::string abstract_id(int i) { return "a" + std::to_string(i); }

/// A claim's gold pool plus a ranking, built directly (no files).
struct ScoredClaim {
    std::string claim;
    std::vector<std::pair<std::string, VerdictLabel>> gold;  // abstract -> label
    std::vector<std::string> ranked;
};

inline GoldSet gold_from(const std::vector<ScoredClaim>& claims) {
    GoldSet gold;
    for (const auto& claim : claims)
        for (const auto& [abstract, label] : claim.gold) gold.add({claim.claim, abstract, label});
    return gold;
}

inline RetrievalSubmission submission_from(const std::vector<ScoredClaim>& claims) {
    RetrievalSubmission submission;
    for (const auto& claim : claims) {
        ClaimRanking ranking;
        ranking.claim_id = claim.claim;
        for (const auto& abstract : claim.ranked) ranking.ranked.push_back({abstract, std::nullopt});
        submission.add(std::move(ranking));
    }
    return submission;
}

/// Random claim with `judged` gold docs (mix of labels) and a ranking of
/// `ranked_len` docs drawing from judged and unjudged ids.
inline ScoredClaim random_scored_claim(std::mt19937& rng, int index, int max_judged,
                                       int max_ranked) {
    std::uniform_int_distribution<int> judged_dist(1, max_judged);
    std::uniform_int_distribution<int> ranked_dist(0, max_ranked);
    std::uniform_int_distribution<int> label_dist(0, 2);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    ScoredClaim claim;
    claim.claim = claim_id(index);
    int judged = judged_dist(rng);
    bool any_relevant = false;
    for (int j = 0; j < judged; ++j) {
        VerdictLabel label = static_cast<VerdictLabel>(label_dist(rng));
        if (label != VerdictLabel::NEI) any_relevant = true;
        claim.gold.emplace_back("g" + std::to_string(index) + "_" + std::to_string(j), label);
    }
    if (!any_relevant)  // ensure the claim is scoreable
        claim.gold.front().second = VerdictLabel::Supports;

    int ranked_len = ranked_dist(rng);
    int unjudged_counter = 0;
    for (int r = 0; r < ranked_len; ++r) {
        std::string doc;
        if (coin(rng) < 0.6 && !claim.gold.empty()) {
            doc = claim.gold[static_cast<std::size_t>(coin(rng) * claim.gold.size())].first;
        } else {
            doc = "u" + std::to_string(index) + "_" + std::to_string(unjudged_counter++);
        }
        if (std::find(claim.ranked.begin(), claim.ranked.end(), doc) == claim.ranked.end())
            claim.ranked.push_back(doc);
    }
    return claim;
}

/// Random complete annotation matrix.
inline AnnotationMatrix random_annotation_matrix(std::mt19937& rng, int items, int annotators,
                                                 int label_pool) {
    const auto& order = narrative_label_order();
    AnnotationMatrix matrix;
    for (int a = 0; a < annotators; ++a) matrix.annotators.push_back("ann" + std::to_string(a));
    std::uniform_int_distribution<int> label_dist(0, label_pool - 1);
    std::uniform_int_distribution<int> extra_dist(0, 3);
    for (int i = 0; i < items; ++i) {
        matrix.items.push_back(claim_id(i));
        std::vector<std::vector<NarrativeLabel>> row;
        for (int a = 0; a < annotators; ++a) {
            std::vector<NarrativeLabel> cell;
            NarrativeLabel first = order[static_cast<std::size_t>(label_dist(rng))];
            cell.push_back(first);
            // Sometimes add a second non-0_0 label.
            if (first != kNoDisinformation && extra_dist(rng) == 0) {
                NarrativeLabel second = order[static_cast<std::size_t>(label_dist(rng))];
                if (second != kNoDisinformation && !(second == first)) cell.push_back(second);
            }
            std::sort(cell.begin(), cell.end());
            row.push_back(std::move(cell));
        }
        matrix.cells.push_back(std::move(row));
    }
    return matrix;
}

/// Builds a corpus whose claim/abstract texts are short deterministic token
/// strings, so the token-overlap stub judge gives controllable alignments.
struct CorpusBuilder {
    Corpus corpus;
    CorpusBuilder& claim(const std::string& id, const std::string& text) {
        corpus.add_claim({id, text});
        return *this;
    }
    CorpusBuilder& abstract(const std::string& id, const std::string& text) {
        corpus.add_abstract({id, std::nullopt, text});
        return *this;
    }
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
}

}  // namespace fixtures
