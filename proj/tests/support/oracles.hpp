// Brute-force reference implementations used only by tests. Each one follows
// the literal textbook/metric definition so it stays independent of the
// engine's computation path.

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace oracles {

// --- Bpref -----------------------------------------------------------------
// Literal definition: R judged relevant docs; n ranges over the first R
// judged non-relevant docs retrieved before r.
inline double bpref(const std::vector<std::string>& ranked,
                    const std::set<std::string>& relevant,
                    const std::set<std::string>& nonrelevant) {
    const std::size_t r_total = relevant.size();
    // Positions of the first R judged non-relevant documents in the ranking.
    std::vector<std::size_t> first_r_nonrel_positions;
    for (std::size_t pos = 0; pos < ranked.size(); ++pos) {
        if (nonrelevant.count(ranked[pos]) && first_r_nonrel_positions.size() < r_total)
            first_r_nonrel_positions.push_back(pos);
    }
    double sum = 0.0;
    for (std::size_t pos = 0; pos < ranked.size(); ++pos) {
        if (!relevant.count(ranked[pos])) continue;
        std::size_t n = 0;
        for (std::size_t nonrel_pos : first_r_nonrel_positions)
            if (nonrel_pos < pos) ++n;
        sum += 1.0 - static_cast<double>(n) / static_cast<double>(r_total);
    }
    return sum / static_cast<double>(r_total);
}

// --- per-class precision/recall/F1 from an explicit confusion matrix ---------

struct PRF {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t support = 0;
};

struct WeightedPRF {
    std::vector<PRF> per_class;
    double weighted_precision = 0.0;
    double weighted_recall = 0.0;
    double weighted_f1 = 0.0;
};

inline WeightedPRF weighted_prf(const std::vector<int>& gold, const std::vector<int>& predicted,
                                int n_classes) {
    std::vector<std::vector<std::size_t>> confusion(
        n_classes, std::vector<std::size_t>(n_classes, 0));
    for (std::size_t i = 0; i < gold.size(); ++i) confusion[gold[i]][predicted[i]] += 1;

    WeightedPRF out;
    out.per_class.resize(n_classes);
    for (int c = 0; c < n_classes; ++c) {
        std::size_t tp = confusion[c][c];
        std::size_t gold_total = 0, pred_total = 0;
        for (int k = 0; k < n_classes; ++k) {
            gold_total += confusion[c][k];
            pred_total += confusion[k][c];
        }
        PRF& prf = out.per_class[c];
        prf.support = gold_total;
        prf.precision = pred_total == 0 ? 0.0 : double(tp) / double(pred_total);
        prf.recall = gold_total == 0 ? 0.0 : double(tp) / double(gold_total);
        prf.f1 = (prf.precision + prf.recall) == 0.0
                     ? 0.0
                     : 2.0 * prf.precision * prf.recall / (prf.precision + prf.recall);
        out.weighted_precision += double(prf.support) * prf.precision;
        out.weighted_recall += double(prf.support) * prf.recall;
        out.weighted_f1 += double(prf.support) * prf.f1;
    }
    const double total = static_cast<double>(gold.size());
    out.weighted_precision /= total;
    out.weighted_recall /= total;
    out.weighted_f1 /= total;
    return out;
}

// --- multi-label per-label counting oracle ------------------------------------

struct MultilabelOracle {
    std::vector<PRF> per_label;
    double macro_f1_all = 0.0;
    double macro_f1_present = 0.0;
    double micro_f1 = 0.0;
    double weighted_f1 = 0.0;
};

inline MultilabelOracle multilabel(const std::vector<std::vector<int>>& gold,
                                   const std::vector<std::vector<int>>& predicted) {
    const std::size_t n_labels = gold.empty() ? 0 : gold[0].size();
    MultilabelOracle out;
    out.per_label.resize(n_labels);
    std::size_t sum_tp = 0, sum_fp = 0, sum_fn = 0;
    std::size_t present = 0;
    double weighted = 0.0;
    std::size_t total_support = 0;
    for (std::size_t j = 0; j < n_labels; ++j) {
        // Set-based counting: rows where the label is on.
        std::set<std::size_t> gold_on, pred_on;
        for (std::size_t i = 0; i < gold.size(); ++i) {
            if (gold[i][j]) gold_on.insert(i);
            if (predicted[i][j]) pred_on.insert(i);
        }
        std::vector<std::size_t> inter;
        std::set_intersection(gold_on.begin(), gold_on.end(), pred_on.begin(), pred_on.end(),
                              std::back_inserter(inter));
        std::size_t tp = inter.size();
        std::size_t fp = pred_on.size() - tp;
        std::size_t fn = gold_on.size() - tp;
        PRF& prf = out.per_label[j];
        prf.support = gold_on.size();
        prf.precision = (tp + fp) == 0 ? 0.0 : double(tp) / double(tp + fp);
        prf.recall = (tp + fn) == 0 ? 0.0 : double(tp) / double(tp + fn);
        prf.f1 = (prf.precision + prf.recall) == 0.0
                     ? 0.0
                     : 2.0 * prf.precision * prf.recall / (prf.precision + prf.recall);
        out.macro_f1_all += prf.f1;
        if (prf.support > 0) {
            out.macro_f1_present += prf.f1;
            ++present;
        }
        weighted += double(prf.support) * prf.f1;
        total_support += prf.support;
        sum_tp += tp;
        sum_fp += fp;
        sum_fn += fn;
    }
    if (n_labels) out.macro_f1_all /= double(n_labels);
    if (present) out.macro_f1_present /= double(present);
    double micro_p = (sum_tp + sum_fp) == 0 ? 0.0 : double(sum_tp) / double(sum_tp + sum_fp);
    double micro_r = (sum_tp + sum_fn) == 0 ? 0.0 : double(sum_tp) / double(sum_tp + sum_fn);
    out.micro_f1 = (micro_p + micro_r) == 0.0 ? 0.0 : 2 * micro_p * micro_r / (micro_p + micro_r);
    if (total_support) out.weighted_f1 = weighted / double(total_support);
    return out;
}

// --- Krippendorff alpha: generic nominal coincidence enumeration ----------------
// units[u] = the values assigned by each coder to unit u (complete data).

inline std::optional<double> krippendorff_alpha_nominal(
    const std::vector<std::vector<int>>& units) {
    std::map<int, std::map<int, double>> coincidence;
    std::map<int, double> totals;
    double n = 0.0;
    for (const auto& unit : units) {
        const double m = static_cast<double>(unit.size());
        for (std::size_t i = 0; i < unit.size(); ++i)
            for (std::size_t j = 0; j < unit.size(); ++j) {
                if (i == j) continue;
                coincidence[unit[i]][unit[j]] += 1.0 / (m - 1.0);
            }
    }
    for (const auto& [c, row] : coincidence)
        for (const auto& [k, value] : row) {
            totals[c] += value;
            n += value;
        }
    double observed = 0.0;
    for (const auto& [c, row] : coincidence)
        for (const auto& [k, value] : row)
            if (c != k) observed += value;
    double expected = 0.0;
    for (const auto& [c, nc] : totals)
        for (const auto& [k, nk] : totals)
            if (c != k) expected += nc * nk;
    expected /= (n * (n - 1.0));
    observed /= n;
    if (expected == 0.0) return std::nullopt;
    return 1.0 - observed / expected;
}

// --- Cohen kappa from a 2x2 contingency table ------------------------------------

inline std::optional<double> cohen_kappa(const std::vector<int>& a, const std::vector<int>& b) {
    double table[2][2] = {{0, 0}, {0, 0}};
    for (std::size_t i = 0; i < a.size(); ++i) table[a[i]][b[i]] += 1.0;
    const double n = static_cast<double>(a.size());
    const double p_o = (table[0][0] + table[1][1]) / n;
    const double a1 = (table[1][0] + table[1][1]) / n;
    const double b1 = (table[0][1] + table[1][1]) / n;
    const double p_e = a1 * b1 + (1 - a1) * (1 - b1);
    if (p_e == 1.0) return std::nullopt;
    return (p_o - p_e) / (1.0 - p_e);
}

// --- pooled Dice over coder pairs ---------------------------------------------------
// vectors[coder][item] in {0,1}.

inline std::optional<double> dice_positive_agreement(
    const std::vector<std::vector<int>>& vectors) {
    double tp = 0.0, fp_fn = 0.0;
    for (std::size_t a = 0; a < vectors.size(); ++a)
        for (std::size_t b = a + 1; b < vectors.size(); ++b)
            for (std::size_t i = 0; i < vectors[a].size(); ++i) {
                if (vectors[a][i] == 1 && vectors[b][i] == 1) tp += 1.0;
                else if (vectors[a][i] != vectors[b][i]) fp_fn += 1.0;
            }
    const double denom = 2.0 * tp + fp_fn;
    if (denom == 0.0) return std::nullopt;
    return 2.0 * tp / denom;
}

}  // namespace oracles
