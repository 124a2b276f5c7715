#include "facteval/narrative_metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace facteval {

std::pair<LabelMatrix, LabelMatrix> binarize(const NarrativeSet& gold,
                                             const NarrativeSet& predictions,
                                             const std::vector<NarrativeLabel>& label_order) {
    std::unordered_map<std::string, int> column;  // code -> column index
    for (std::size_t j = 0; j < label_order.size(); ++j)
        column[label_order[j].code()] = static_cast<int>(j);

    for (const auto& a : predictions.assignments())
        if (!gold.find(a.claim_id))
            throw std::invalid_argument("binarize: predicted claim \"" + a.claim_id +
                                        "\" is absent from gold");

    std::vector<std::string> claim_ids;
    claim_ids.reserve(gold.assignments().size());
    for (const auto& a : gold.assignments()) claim_ids.push_back(a.claim_id);
    std::sort(claim_ids.begin(), claim_ids.end());

    auto make_row = [&](const NarrativeAssignment* assignment) {
        std::vector<std::uint8_t> row(label_order.size(), 0);
        if (assignment)
            for (const auto& label : assignment->labels) {
                auto it = column.find(label.code());
                if (it == column.end())
                    throw std::invalid_argument("binarize: label " + label.code() +
                                                " is outside the requested label order");
                row[static_cast<std::size_t>(it->second)] = 1;
            }
        return row;
    };

    LabelMatrix gold_matrix{label_order, claim_ids, {}, {}};
    LabelMatrix pred_matrix{label_order, claim_ids, {}, {}};
    for (const auto& claim_id : claim_ids) {
        gold_matrix.rows.push_back(make_row(gold.find(claim_id)));
        const NarrativeAssignment* predicted = predictions.find(claim_id);
        if (!predicted) pred_matrix.unsubmitted.push_back(claim_id);
        pred_matrix.rows.push_back(make_row(predicted));
    }
    return {std::move(gold_matrix), std::move(pred_matrix)};
}

NarrativeReport multilabel_scores(const LabelMatrix& gold, const LabelMatrix& predictions,
                                  MacroUniverse universe) {
    if (gold.rows.size() != predictions.rows.size() ||
        gold.labels.size() != predictions.labels.size())
        throw std::invalid_argument("multilabel_scores: matrix shapes differ");
    for (std::size_t i = 0; i < gold.rows.size(); ++i)
        if (gold.rows[i].size() != gold.labels.size() ||
            predictions.rows[i].size() != predictions.labels.size())
            throw std::invalid_argument("multilabel_scores: ragged matrix row");

    const std::size_t n_labels = gold.labels.size();
    NarrativeReport report;
    report.universe = universe;
    report.claims = gold.rows.size();
    report.per_label.resize(n_labels);

    std::size_t total_tp = 0, total_fp = 0, total_fn = 0;
    double macro_p_all = 0.0, macro_r_all = 0.0, macro_f1_all = 0.0;
    double macro_p_present = 0.0, macro_r_present = 0.0, macro_f1_present = 0.0;
    std::size_t present_labels = 0;
    double weighted_f1 = 0.0;
    std::size_t total_support = 0;

    for (std::size_t j = 0; j < n_labels; ++j) {
        std::size_t tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < gold.rows.size(); ++i) {
            bool g = gold.rows[i][j] != 0;
            bool p = predictions.rows[i][j] != 0;
            if (g && p) ++tp;
            else if (!g && p) ++fp;
            else if (g && !p) ++fn;
        }
        LabelPRF& prf = report.per_label[j];
        prf.support = tp + fn;
        if (tp + fp == 0) {
            prf.precision = 0.0;
            prf.zero_division = true;
        } else {
            prf.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
        }
        if (tp + fn == 0) {
            prf.recall = 0.0;
            prf.zero_division = true;
        } else {
            prf.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
        }
        prf.f1 = (prf.precision + prf.recall == 0.0)
                     ? 0.0
                     : 2.0 * prf.precision * prf.recall / (prf.precision + prf.recall);

        total_tp += tp;
        total_fp += fp;
        total_fn += fn;
        macro_p_all += prf.precision;
        macro_r_all += prf.recall;
        macro_f1_all += prf.f1;
        if (prf.support > 0) {
            ++present_labels;
            macro_p_present += prf.precision;
            macro_r_present += prf.recall;
            macro_f1_present += prf.f1;
        }
        weighted_f1 += static_cast<double>(prf.support) * prf.f1;
        total_support += prf.support;
    }

    const double nl = static_cast<double>(n_labels);
    report.macro_f1_all_labels = n_labels ? macro_f1_all / nl : 0.0;
    report.macro_f1_present_labels =
        present_labels ? macro_f1_present / static_cast<double>(present_labels) : 0.0;
    if (universe == MacroUniverse::AllLabels) {
        report.macro_precision = n_labels ? macro_p_all / nl : 0.0;
        report.macro_recall = n_labels ? macro_r_all / nl : 0.0;
        report.macro_f1 = report.macro_f1_all_labels;
    } else {
        report.macro_precision =
            present_labels ? macro_p_present / static_cast<double>(present_labels) : 0.0;
        report.macro_recall =
            present_labels ? macro_r_present / static_cast<double>(present_labels) : 0.0;
        report.macro_f1 = report.macro_f1_present_labels;
    }

    double micro_p = (total_tp + total_fp) == 0
                         ? 0.0
                         : static_cast<double>(total_tp) / static_cast<double>(total_tp + total_fp);
    double micro_r = (total_tp + total_fn) == 0
                         ? 0.0
                         : static_cast<double>(total_tp) / static_cast<double>(total_tp + total_fn);
    report.micro_f1 =
        (micro_p + micro_r == 0.0) ? 0.0 : 2.0 * micro_p * micro_r / (micro_p + micro_r);
    report.weighted_f1 =
        total_support ? weighted_f1 / static_cast<double>(total_support) : 0.0;
    return report;
}

}  // namespace facteval
