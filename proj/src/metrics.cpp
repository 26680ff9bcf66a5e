#include "mltc/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "mltc/errors.hpp"

namespace mltc {

namespace {

void check_lengths(const std::vector<LabelSet>& preds, const std::vector<LabelSet>& golds,
                   int q) {
    if (preds.size() != golds.size())
        throw ConfigError("metrics: prediction and gold counts differ");
    if (preds.empty()) throw ConfigError("metrics: need at least one instance");
    if (q < 1) throw ConfigError("metrics: Q must be >= 1");
    for (const auto* side : {&preds, &golds})
        for (const LabelSet& set : *side)
            for (int id : set.ids())
                if (id < 0 || id >= q) throw ConfigError("metrics: label id out of range");
}

}  // namespace

double hamming_loss(const std::vector<LabelSet>& preds, const std::vector<LabelSet>& golds,
                    int q) {
    check_lengths(preds, golds, q);
    std::int64_t mismatched = 0;
    for (std::size_t i = 0; i < preds.size(); ++i)
        mismatched += (std::int64_t)preds[i].symmetric_difference_size(golds[i]);
    return double(mismatched) / (double(preds.size()) * double(q));
}

double subset_accuracy(const std::vector<LabelSet>& preds, const std::vector<LabelSet>& golds) {
    if (preds.size() != golds.size())
        throw ConfigError("metrics: prediction and gold counts differ");
    if (preds.empty()) throw ConfigError("metrics: need at least one instance");
    std::int64_t exact = 0;
    for (std::size_t i = 0; i < preds.size(); ++i)
        if (preds[i] == golds[i]) ++exact;
    return double(exact) / double(preds.size());
}

double example_based_accuracy(const std::vector<LabelSet>& preds,
                              const std::vector<LabelSet>& golds) {
    if (preds.size() != golds.size())
        throw ConfigError("metrics: prediction and gold counts differ");
    if (preds.empty()) throw ConfigError("metrics: need at least one instance");
    double sum = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        const std::size_t unions = preds[i].union_size(golds[i]);
        if (unions == 0) {
            sum += 1.0;  // both empty: exactly right
        } else {
            sum += double(preds[i].intersection_size(golds[i])) / double(unions);
        }
    }
    return sum / double(preds.size());
}

MicroScores micro_scores(const std::vector<LabelSet>& preds, const std::vector<LabelSet>& golds,
                         int q) {
    check_lengths(preds, golds, q);
    MicroScores out;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        const auto tp = (std::int64_t)preds[i].intersection_size(golds[i]);
        out.totals.tp += tp;
        out.totals.fp += (std::int64_t)preds[i].size() - tp;
        out.totals.fn += (std::int64_t)golds[i].size() - tp;
    }
    const auto& t = out.totals;
    if (t.tp == 0 && t.fp == 0 && t.fn == 0) {
        out.precision = out.recall = out.f1 = 1.0;
        return out;
    }
    out.precision = (t.tp + t.fp) > 0 ? double(t.tp) / double(t.tp + t.fp) : 0.0;
    out.recall = (t.tp + t.fn) > 0 ? double(t.tp) / double(t.tp + t.fn) : 0.0;
    const double denom = out.precision + out.recall;
    out.f1 = denom > 0.0 ? 2.0 * out.precision * out.recall / denom : 0.0;
    return out;
}

std::vector<double> per_label_accuracy(const std::vector<LabelSet>& preds,
                                       const std::vector<LabelSet>& golds, int q) {
    check_lengths(preds, golds, q);
    const auto n = (std::int64_t)preds.size();
    std::vector<std::int64_t> mismatches(std::size_t(q), 0);
    for (std::size_t i = 0; i < preds.size(); ++i) {
        // Every id in the symmetric difference is one membership mismatch.
        const auto& a = preds[i].ids();
        const auto& b = golds[i].ids();
        std::size_t ia = 0, ib = 0;
        while (ia < a.size() || ib < b.size()) {
            if (ib == b.size() || (ia < a.size() && a[ia] < b[ib])) {
                mismatches[std::size_t(a[ia])]++;
                ++ia;
            } else if (ia == a.size() || b[ib] < a[ia]) {
                mismatches[std::size_t(b[ib])]++;
                ++ib;
            } else {
                ++ia;
                ++ib;
            }
        }
    }
    std::vector<double> acc(std::size_t(q));
    for (int l = 0; l < q; ++l)
        acc[std::size_t(l)] = double(n - mismatches[std::size_t(l)]) / double(n);
    return acc;
}

EvaluationReport evaluate(const std::vector<LabelSet>& preds, const std::vector<LabelSet>& golds,
                          int q) {
    check_lengths(preds, golds, q);
    EvaluationReport report;
    report.n = (int)preds.size();
    report.q = q;
    report.hamming_loss = hamming_loss(preds, golds, q);
    report.subset_accuracy = subset_accuracy(preds, golds);
    report.example_accuracy = example_based_accuracy(preds, golds);
    const MicroScores micro = micro_scores(preds, golds, q);
    report.micro_precision = micro.precision;
    report.micro_recall = micro.recall;
    report.micro_f1 = micro.f1;
    report.totals = micro.totals;
    report.per_label_accuracy = per_label_accuracy(preds, golds, q);

    // Per-label accuracies and hamming loss grade the same N*Q membership
    // grid; verify the integer mismatch counts agree before the report
    // leaves this module.
    std::int64_t from_labels = 0;
    for (double acc : report.per_label_accuracy)
        from_labels += (std::int64_t)std::llround((1.0 - acc) * double(report.n));
    const auto from_hamming = (std::int64_t)std::llround(
        report.hamming_loss * double(report.n) * double(report.q));
    internal_check(from_labels == from_hamming,
                   "per-label accuracy does not complement hamming loss");
    return report;
}

std::vector<LabelSet> label_sets_of(const std::vector<Prediction>& preds) {
    std::vector<LabelSet> out;
    out.reserve(preds.size());
    for (const Prediction& p : preds) out.push_back(p.labels);
    return out;
}

MarginReport accuracy_margin(const EvaluationReport& baseline, const EvaluationReport& approach,
                             const std::vector<std::int64_t>& training_counts) {
    const std::size_t q = baseline.per_label_accuracy.size();
    if (approach.per_label_accuracy.size() != q || training_counts.size() != q)
        throw ConfigError("accuracy_margin: label counts differ between inputs");

    MarginReport report;
    report.rows.resize(q);
    for (std::size_t l = 0; l < q; ++l) {
        MarginRow& row = report.rows[l];
        row.label_id = (int)l;
        row.training_count = training_counts[l];
        row.baseline_accuracy = baseline.per_label_accuracy[l];
        row.approach_accuracy = approach.per_label_accuracy[l];
        row.margin = row.approach_accuracy - row.baseline_accuracy;
    }
    std::sort(report.rows.begin(), report.rows.end(), [](const MarginRow& a, const MarginRow& b) {
        if (a.training_count != b.training_count) return a.training_count < b.training_count;
        return a.label_id < b.label_id;
    });

    double mean_margin = 0.0, mean_base = 0.0, mean_approach = 0.0;
    for (const MarginRow& row : report.rows) {
        mean_margin += row.margin;
        mean_base += row.baseline_accuracy;
        mean_approach += row.approach_accuracy;
    }
    mean_margin /= double(q);
    mean_base /= double(q);
    mean_approach /= double(q);
    internal_check(std::abs(mean_margin - (mean_approach - mean_base)) <= 1e-12,
                   "margin mean does not match per-label accuracy means");
    return report;
}

}  // namespace mltc
