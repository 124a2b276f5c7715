#include "facteval/iaa.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace facteval {

bool AnnotationMatrix::cell_has_label(std::size_t item, std::size_t annotator,
                                      const NarrativeLabel& label) const {
    const auto& cell = cells[item][annotator];
    return std::binary_search(cell.begin(), cell.end(), label);
}

bool AnnotationMatrix::cell_has_group(std::size_t item, std::size_t annotator,
                                      int group) const {
    for (const auto& label : cells[item][annotator])
        if (label.group == group) return true;
    return false;
}

AnnotationMatrix load_annotations(const std::string& path, IssueList& issues, bool strict) {
    std::map<std::string, std::map<std::string, std::vector<NarrativeLabel>>> raw;
    std::set<std::string> annotators;
    for_each_jsonl_record(path, issues, [&](int line, const nlohmann::json& rec) {
        if (!check_record_fields(rec, {"claim_id", "annotator_id", "labels"}, strict, path,
                                 line, issues))
            return;
        auto claim_id = require_string(rec, "claim_id", path, line, issues);
        auto annotator_id = require_string(rec, "annotator_id", path, line, issues);
        if (!claim_id || !annotator_id) return;
        auto labels_it = rec.find("labels");
        if (labels_it == rec.end() || !labels_it->is_array()) {
            issues.error(path, line, "missing or non-array field \"labels\"");
            return;
        }
        std::vector<NarrativeLabel> labels;
        for (const auto& item : *labels_it) {
            if (!item.is_string()) {
                issues.error(path, line, "narrative codes must be strings");
                return;
            }
            auto label = parse_narrative_code(item.get<std::string>());
            if (!label) {
                issues.error(path, line,
                             "unknown narrative code \"" + item.get<std::string>() + "\"");
                return;
            }
            if (std::find(labels.begin(), labels.end(), *label) != labels.end()) {
                issues.error(path, line,
                             "duplicate narrative code \"" + item.get<std::string>() + "\"");
                return;
            }
            labels.push_back(*label);
        }
        if (labels.empty()) {
            issues.error(path, line, "empty annotation cell");
            return;
        }
        if (labels.size() > 1 &&
            std::find(labels.begin(), labels.end(), kNoDisinformation) != labels.end()) {
            issues.error(path, line, "label 0_0 is exclusive; no other code may accompany it");
            return;
        }
        std::sort(labels.begin(), labels.end());
        auto [cell, inserted] = raw[*claim_id].emplace(*annotator_id, std::move(labels));
        if (!inserted) {
            issues.error(path, line,
                         "duplicate annotation for (" + *claim_id + ", " + *annotator_id + ")");
            return;
        }
        annotators.insert(*annotator_id);
    });

    AnnotationMatrix matrix;
    matrix.annotators.assign(annotators.begin(), annotators.end());
    for (auto& [item, by_annotator] : raw) {
        matrix.items.push_back(item);
        std::vector<std::vector<NarrativeLabel>> row;
        for (const auto& annotator : matrix.annotators) {
            auto it = by_annotator.find(annotator);
            if (it == by_annotator.end()) {
                issues.error(path, 0,
                             "incomplete design: missing cell (" + item + ", " + annotator + ")");
                row.emplace_back();
            } else {
                row.push_back(std::move(it->second));
            }
        }
        matrix.cells.push_back(std::move(row));
    }
    return matrix;
}

// --- coefficients -------------------------------------------------------------

std::optional<double> krippendorff_alpha_binary(
    const std::vector<std::array<std::size_t, 2>>& unit_counts) {
    // alpha = 1 - (n-1) * sum_u[n_u0*n_u1/(m_u-1)] / (n_0*n_1)
    double within = 0.0;
    double n0 = 0.0, n1 = 0.0;
    for (const auto& unit : unit_counts) {
        const double u0 = static_cast<double>(unit[0]);
        const double u1 = static_cast<double>(unit[1]);
        const double m = u0 + u1;
        if (m < 2.0) throw std::invalid_argument("alpha: unit with fewer than two values");
        within += u0 * u1 / (m - 1.0);
        n0 += u0;
        n1 += u1;
    }
    const double n = n0 + n1;
    if (n0 == 0.0 || n1 == 0.0) return std::nullopt;  // zero expected disagreement
    return 1.0 - (n - 1.0) * within / (n0 * n1);
}

namespace {

void require_nondegenerate(const AnnotationMatrix& matrix) {
    if (matrix.annotator_count() < 2)
        throw std::invalid_argument("agreement statistics need at least two annotators");
    if (matrix.item_count() < 1)
        throw std::invalid_argument("agreement statistics need at least one item");
}

std::optional<double> kappa_from_vectors(const std::vector<std::uint8_t>& a,
                                         const std::vector<std::uint8_t>& b) {
    const double n = static_cast<double>(a.size());
    if (n == 0.0) return std::nullopt;
    double agree = 0.0, a1 = 0.0, b1 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) agree += 1.0;
        a1 += a[i];
        b1 += b[i];
    }
    const double p_o = agree / n;
    const double pa1 = a1 / n, pb1 = b1 / n;
    const double p_e = pa1 * pb1 + (1.0 - pa1) * (1.0 - pb1);
    if (1.0 - p_e == 0.0) return std::nullopt;  // degenerate marginals
    return (p_o - p_e) / (1.0 - p_e);
}

}  // namespace

std::optional<double> per_label_binary_alpha(const AnnotationMatrix& matrix,
                                             const NarrativeLabel& label) {
    require_nondegenerate(matrix);
    std::vector<std::array<std::size_t, 2>> units(matrix.item_count(), {0, 0});
    for (std::size_t i = 0; i < matrix.item_count(); ++i)
        for (std::size_t a = 0; a < matrix.annotator_count(); ++a)
            units[i][matrix.cell_has_label(i, a, label) ? 1 : 0] += 1;
    return krippendorff_alpha_binary(units);
}

namespace {

// Labels assigned by at least one annotator anywhere in the matrix.
std::vector<NarrativeLabel> observed_labels(const AnnotationMatrix& matrix) {
    std::vector<NarrativeLabel> observed;
    for (const auto& label : narrative_label_order()) {
        bool seen = false;
        for (std::size_t i = 0; i < matrix.item_count() && !seen; ++i)
            for (std::size_t a = 0; a < matrix.annotator_count() && !seen; ++a)
                if (matrix.cell_has_label(i, a, label)) seen = true;
        if (seen) observed.push_back(label);
    }
    return observed;
}

}  // namespace

std::optional<double> overall_alpha(const AnnotationMatrix& matrix) {
    require_nondegenerate(matrix);
    // Units span the labels the annotators actually used; labels nobody ever
    // assigned carry no decisions. A matrix where everyone agrees on one
    // label everywhere therefore lands on the zero-variance sentinel.
    const std::vector<NarrativeLabel> observed = observed_labels(matrix);
    std::vector<std::array<std::size_t, 2>> units;
    units.reserve(matrix.item_count() * observed.size());
    for (std::size_t i = 0; i < matrix.item_count(); ++i) {
        for (const auto& label : observed) {
            std::array<std::size_t, 2> unit{0, 0};
            for (std::size_t a = 0; a < matrix.annotator_count(); ++a)
                unit[matrix.cell_has_label(i, a, label) ? 1 : 0] += 1;
            units.push_back(unit);
        }
    }
    return krippendorff_alpha_binary(units);
}

std::optional<double> top_level_alpha(const AnnotationMatrix& matrix, int group) {
    require_nondegenerate(matrix);
    std::vector<std::array<std::size_t, 2>> units(matrix.item_count(), {0, 0});
    for (std::size_t i = 0; i < matrix.item_count(); ++i)
        for (std::size_t a = 0; a < matrix.annotator_count(); ++a)
            units[i][matrix.cell_has_group(i, a, group) ? 1 : 0] += 1;
    return krippendorff_alpha_binary(units);
}

std::optional<double> prevalence_weighted_alpha(
    const std::vector<std::optional<double>>& alphas,
    const std::vector<double>& prevalences) {
    if (alphas.size() != prevalences.size())
        throw std::invalid_argument("prevalence_weighted_alpha: size mismatch");
    double weighted = 0.0, total = 0.0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!alphas[i].has_value()) continue;
        weighted += prevalences[i] * *alphas[i];
        total += prevalences[i];
    }
    if (total == 0.0) return std::nullopt;
    return weighted / total;
}

std::optional<double> pairwise_kappa(const AnnotationMatrix& matrix, std::size_t annotator_a,
                                     std::size_t annotator_b) {
    const auto& order = narrative_label_order();
    std::vector<std::uint8_t> va, vb;
    va.reserve(matrix.item_count() * order.size());
    vb.reserve(matrix.item_count() * order.size());
    for (std::size_t i = 0; i < matrix.item_count(); ++i)
        for (const auto& label : order) {
            va.push_back(matrix.cell_has_label(i, annotator_a, label) ? 1 : 0);
            vb.push_back(matrix.cell_has_label(i, annotator_b, label) ? 1 : 0);
        }
    return kappa_from_vectors(va, vb);
}

std::optional<double> pairwise_kappa_for_label(const AnnotationMatrix& matrix,
                                               const NarrativeLabel& label,
                                               std::size_t annotator_a,
                                               std::size_t annotator_b) {
    std::vector<std::uint8_t> va, vb;
    va.reserve(matrix.item_count());
    vb.reserve(matrix.item_count());
    for (std::size_t i = 0; i < matrix.item_count(); ++i) {
        va.push_back(matrix.cell_has_label(i, annotator_a, label) ? 1 : 0);
        vb.push_back(matrix.cell_has_label(i, annotator_b, label) ? 1 : 0);
    }
    return kappa_from_vectors(va, vb);
}

namespace {

struct DiceCounts {
    std::size_t tp = 0;
    std::size_t mismatch = 0;  // FP + FN pooled (one positive, one negative)
};

DiceCounts dice_counts_for_pair(const AnnotationMatrix& matrix, const NarrativeLabel& label,
                                std::size_t a, std::size_t b) {
    DiceCounts counts;
    for (std::size_t i = 0; i < matrix.item_count(); ++i) {
        bool pa = matrix.cell_has_label(i, a, label);
        bool pb = matrix.cell_has_label(i, b, label);
        if (pa && pb) ++counts.tp;
        else if (pa != pb) ++counts.mismatch;
    }
    return counts;
}

}  // namespace

std::optional<double> positive_agreement(const AnnotationMatrix& matrix,
                                         const NarrativeLabel& label) {
    require_nondegenerate(matrix);
    std::size_t tp = 0, mismatch = 0;
    for (std::size_t a = 0; a < matrix.annotator_count(); ++a)
        for (std::size_t b = a + 1; b < matrix.annotator_count(); ++b) {
            DiceCounts counts = dice_counts_for_pair(matrix, label, a, b);
            tp += counts.tp;
            mismatch += counts.mismatch;
        }
    const double denom = 2.0 * static_cast<double>(tp) + static_cast<double>(mismatch);
    if (denom == 0.0) return std::nullopt;  // label never assigned
    return 2.0 * static_cast<double>(tp) / denom;
}

std::optional<double> positive_agreement_pair_mean(const AnnotationMatrix& matrix,
                                                   const NarrativeLabel& label) {
    require_nondegenerate(matrix);
    double sum = 0.0;
    std::size_t defined = 0;
    for (std::size_t a = 0; a < matrix.annotator_count(); ++a)
        for (std::size_t b = a + 1; b < matrix.annotator_count(); ++b) {
            DiceCounts counts = dice_counts_for_pair(matrix, label, a, b);
            const double denom =
                2.0 * static_cast<double>(counts.tp) + static_cast<double>(counts.mismatch);
            if (denom == 0.0) continue;
            sum += 2.0 * static_cast<double>(counts.tp) / denom;
            ++defined;
        }
    if (defined == 0) return std::nullopt;
    return sum / static_cast<double>(defined);
}

// --- report --------------------------------------------------------------------

AgreementReport agreement_report(const AnnotationMatrix& matrix,
                                 bool include_no_disinformation, ExecMode mode) {
    require_nondegenerate(matrix);
    const auto& order = narrative_label_order();
    const double decisions =
        static_cast<double>(matrix.item_count() * matrix.annotator_count());

    AgreementReport report;
    report.includes_no_disinformation = include_no_disinformation;
    report.annotators = matrix.annotators;
    report.overall_alpha = overall_alpha(matrix);

    report.per_label.resize(order.size());
    for_each_index(order.size(), mode, [&](std::size_t j) {
        const NarrativeLabel& label = order[j];
        LabelAgreement& row = report.per_label[j];
        row.label = label;
        std::size_t positives = 0;
        for (std::size_t i = 0; i < matrix.item_count(); ++i) {
            bool any = false;
            for (std::size_t a = 0; a < matrix.annotator_count(); ++a)
                if (matrix.cell_has_label(i, a, label)) {
                    ++positives;
                    any = true;
                }
            if (any) ++row.n;
        }
        row.prevalence = static_cast<double>(positives) / decisions;
        row.alpha = per_label_binary_alpha(matrix, label);
        double kappa_sum = 0.0;
        std::size_t kappa_defined = 0;
        for (std::size_t a = 0; a < matrix.annotator_count(); ++a)
            for (std::size_t b = a + 1; b < matrix.annotator_count(); ++b)
                if (auto k = pairwise_kappa_for_label(matrix, label, a, b)) {
                    kappa_sum += *k;
                    ++kappa_defined;
                }
        if (kappa_defined > 0)
            row.mean_pairwise_kappa = kappa_sum / static_cast<double>(kappa_defined);
        row.positive_agreement = positive_agreement(matrix, label);
    });

    {
        std::vector<std::optional<double>> alphas;
        std::vector<double> prevalences;
        for (const auto& row : report.per_label) {
            if (!include_no_disinformation && row.label == kNoDisinformation) continue;
            alphas.push_back(row.alpha);
            prevalences.push_back(row.prevalence);
        }
        report.prevalence_weighted_alpha = prevalence_weighted_alpha(alphas, prevalences);
    }

    report.top_level.resize(kNarrativeGroupCount);
    for_each_index(static_cast<std::size_t>(kNarrativeGroupCount), mode, [&](std::size_t g) {
        GroupAgreement& row = report.top_level[g];
        row.group = static_cast<int>(g);
        std::size_t positives = 0;
        for (std::size_t i = 0; i < matrix.item_count(); ++i) {
            bool any = false;
            for (std::size_t a = 0; a < matrix.annotator_count(); ++a)
                if (matrix.cell_has_group(i, a, static_cast<int>(g))) {
                    ++positives;
                    any = true;
                }
            if (any) ++row.n;
        }
        row.prevalence = static_cast<double>(positives) / decisions;
        row.alpha = top_level_alpha(matrix, static_cast<int>(g));
    });

    {
        std::vector<std::optional<double>> alphas;
        std::vector<double> prevalences;
        for (const auto& row : report.top_level) {
            if (!include_no_disinformation && row.group == 0) continue;
            alphas.push_back(row.alpha);
            prevalences.push_back(row.prevalence);
        }
        report.top_level_prevalence_weighted_alpha =
            prevalence_weighted_alpha(alphas, prevalences);
    }

    report.pairwise_kappa_matrix.assign(
        matrix.annotator_count(),
        std::vector<std::optional<double>>(matrix.annotator_count()));
    for (std::size_t a = 0; a < matrix.annotator_count(); ++a) {
        report.pairwise_kappa_matrix[a][a] = 1.0;
        for (std::size_t b = a + 1; b < matrix.annotator_count(); ++b) {
            auto k = pairwise_kappa(matrix, a, b);
            report.pairwise_kappa_matrix[a][b] = k;
            report.pairwise_kappa_matrix[b][a] = k;
        }
    }
    return report;
}

// --- gold aggregation -------------------------------------------------------------

GoldAggregation aggregate_gold(const AnnotationMatrix& matrix, int threshold,
                               int panel_size) {
    if (panel_size != static_cast<int>(matrix.annotator_count()))
        throw std::invalid_argument("aggregate_gold: panel_size must equal annotator count");
    if (threshold < 1 || threshold > panel_size)
        throw std::invalid_argument("aggregate_gold: threshold must be in [1, panel_size]");

    GoldAggregation result;
    result.threshold = threshold;
    result.panel_size = panel_size;
    std::size_t unanimous = 0;

    for (std::size_t i = 0; i < matrix.item_count(); ++i) {
        std::map<NarrativeLabel, int> votes;
        for (std::size_t a = 0; a < matrix.annotator_count(); ++a)
            for (const auto& label : matrix.cells[i][a]) votes[label] += 1;

        bool all_same = true;
        for (std::size_t a = 1; a < matrix.annotator_count(); ++a)
            if (matrix.cells[i][a] != matrix.cells[i][0]) {
                all_same = false;
                break;
            }
        if (all_same) ++unanimous;

        std::vector<NarrativeLabel> gold_labels;
        for (const auto& [label, count] : votes)
            if (count >= threshold) gold_labels.push_back(label);

        std::string reason;
        if (gold_labels.empty()) {
            reason = "no label reached the threshold";
        } else if (gold_labels.size() > 1 &&
                   std::find(gold_labels.begin(), gold_labels.end(), kNoDisinformation) !=
                       gold_labels.end()) {
            reason = "no-disinformation label conflicts with another thresholded label";
        }

        if (reason.empty()) {
            result.gold[matrix.items[i]] = std::move(gold_labels);
        } else {
            AdjudicationItem queued;
            queued.item = matrix.items[i];
            queued.reason = reason;
            for (const auto& [label, count] : votes)
                queued.votes.emplace_back(label.code(), count);
            result.queue.push_back(std::move(queued));
        }
    }

    const double items = static_cast<double>(matrix.item_count());
    if (items > 0) {
        result.threshold_pass_rate = static_cast<double>(result.gold.size()) / items;
        result.unanimous_rate = static_cast<double>(unanimous) / items;
    }
    return result;
}

}  // namespace facteval
