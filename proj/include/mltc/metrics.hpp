#pragma once

#include <cstdint>
#include <vector>

#include "mltc/corpus.hpp"
#include "mltc/multilabel.hpp"

namespace mltc {

struct ConfusionTotals {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
};

struct MicroScores {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    ConfusionTotals totals;
};

struct EvaluationReport {
    double hamming_loss = 0.0;
    double subset_accuracy = 0.0;
    double example_accuracy = 0.0;
    double micro_precision = 0.0;
    double micro_recall = 0.0;
    double micro_f1 = 0.0;
    std::vector<double> per_label_accuracy;  // size Q
    ConfusionTotals totals;
    int n = 0;
    int q = 0;
};

// Fraction of mispredicted (example, label) memberships, normalized by N*Q.
double hamming_loss(const std::vector<LabelSet>& preds, const std::vector<LabelSet>& golds,
                    int q);

// Fraction of instances whose predicted set matches the gold set exactly.
double subset_accuracy(const std::vector<LabelSet>& preds, const std::vector<LabelSet>& golds);

// Mean Jaccard overlap; an instance where both sets are empty scores 1.
double example_based_accuracy(const std::vector<LabelSet>& preds,
                              const std::vector<LabelSet>& golds);

// tp/fp/fn summed over labels. Conventions: all three zero => precision =
// recall = f1 = 1; otherwise a 0/0 component is 0 and f1 = 0 when
// precision + recall = 0.
MicroScores micro_scores(const std::vector<LabelSet>& preds, const std::vector<LabelSet>& golds,
                         int q);

// Membership-indicator accuracy per label: the fraction of instances whose
// "label in set" bit matches. Averaging these over labels complements
// hamming loss exactly.
std::vector<double> per_label_accuracy(const std::vector<LabelSet>& preds,
                                       const std::vector<LabelSet>& golds, int q);

// All of the above in one pass from shared integer counts, so the report is
// internally consistent by construction.
EvaluationReport evaluate(const std::vector<LabelSet>& preds, const std::vector<LabelSet>& golds,
                          int q);

std::vector<LabelSet> label_sets_of(const std::vector<Prediction>& preds);

// Per-label accuracy gap between an approach and its baseline, ordered by
// ascending training frequency (ties by label id) to surface minority-label
// behavior first.
struct MarginRow {
    int label_id = 0;
    std::int64_t training_count = 0;
    double baseline_accuracy = 0.0;
    double approach_accuracy = 0.0;
    double margin = 0.0;  // approach - baseline
};

struct MarginReport {
    std::vector<MarginRow> rows;
};

MarginReport accuracy_margin(const EvaluationReport& baseline, const EvaluationReport& approach,
                             const std::vector<std::int64_t>& training_counts);

}  // namespace mltc
