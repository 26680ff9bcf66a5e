#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "mltc/corpus.hpp"
#include "mltc/weak_learners.hpp"

namespace mltc {

// One instance's predicted label set plus a per-label real score. A label is
// in the set exactly when its score crosses the owning model's decision rule.
struct Prediction {
    LabelSet labels;
    std::vector<double> scores;  // size Q
};

// ---- Binary Relevance ----

struct BRModel {
    LabelSpace space;
    int dimension = 0;
    std::vector<BinaryModel> per_label;  // exactly Q, label order
};

// One independent binary problem per label, uniform instance weights,
// per-label seeds hash(weak.seed, label).
BRModel train_br(const MultiLabelDataset& train, const WeakSpec& weak);
Prediction predict_br(const BRModel& model, const SparseBinaryVector& x);

// ---- Label Powerset ----

// One-vs-rest battery used for the weak kinds without native multiclass
// support (stump, smo).
struct OvrBattery {
    std::vector<BinaryModel> per_class;
};

struct LPModel {
    LabelSpace space;
    int dimension = 0;
    std::vector<LabelSet> codebook;  // class id -> distinct training label set
    std::vector<double> priors;      // training frequency per class
    WeakKind weak_kind = WeakKind::tree;
    std::variant<TreeModel, ForestModel, NaiveBayesModel, OvrBattery> predictor;
};

LPModel train_lp(const MultiLabelDataset& train, const WeakSpec& weak);
// Never predicts a label set unseen in training. One-vs-rest ties break by
// higher class prior, then lower class id.
Prediction predict_lp(const LPModel& model, const SparseBinaryVector& x);

// ---- AdaBoost.MH ----

struct BoostRound {
    BinaryModel weak;      // over the label-augmented space
    double epsilon = 0.0;  // raw weighted pair error, in [0, 0.5)
    double alpha = 0.0;    // 0.5 * ln((1-eps)/eps), eps clamped
    double z = 0.0;        // 2 * sqrt(eps * (1-eps)), eps clamped
};

struct AdaBoostMHModel {
    LabelSpace space;
    int feature_dimension = 0;  // augmented dimension is feature_dimension + Q
    std::vector<BoostRound> rounds;

    int augmented_dimension() const { return feature_dimension + space.size(); }
};

// Distribution snapshots for the weight-law tests: entry 0 is the uniform
// start, entry t the renormalized distribution after round t.
struct BoostTrace {
    std::vector<std::vector<double>> distributions;
};

// Boosting over (instance, label) pairs: each round trains one weak learner
// on N*Q augmented examples (features shifted by 0 plus a Q-wide one-hot
// label block), reweighting hard pairs up. Stops early on a degenerate
// round (raw error >= 0.5, dropped) or a perfect one (error 0, kept).
AdaBoostMHModel train_adaboost_mh(const MultiLabelDataset& train, const WeakSpec& weak,
                                  int rounds, BoostTrace* trace = nullptr);

// l is predicted iff sum_t alpha_t h_t(x, l) > 0; an exact 0 stays out.
Prediction predict_adaboost_mh(const AdaBoostMHModel& model, const SparseBinaryVector& x);
// Predictions after each round prefix 1..T (for iteration sweeps).
std::vector<Prediction> predict_adaboost_prefixes(const AdaBoostMHModel& model,
                                                  const SparseBinaryVector& x);

SparseBinaryVector augment_with_label(const SparseBinaryVector& x, int label, int q);

// ---- multi-label bagging ----

enum class BaseKind { br, lp };

const char* base_kind_name(BaseKind kind);

struct BaggingModel {
    BaseKind base_kind = BaseKind::br;
    double vote_threshold = 0.5;  // inclusive
    std::vector<BRModel> br_members;
    std::vector<LPModel> lp_members;

    std::size_t member_count() const {
        return base_kind == BaseKind::br ? br_members.size() : lp_members.size();
    }
};

struct BaggingOptions {
    int members = 10;
    double vote_threshold = 0.5;
    // Debug switch: train every member on the full dataset with the
    // unmodified weak seed, which makes all members identical.
    bool disable_bootstrap = false;
};

BaggingModel train_bagging(const MultiLabelDataset& train, BaseKind base_kind,
                           const WeakSpec& weak, const BaggingOptions& options,
                           std::uint64_t seed);

// l is predicted iff at least vote_threshold of the members predict it
// (inclusive); the score is the vote fraction.
Prediction predict_bagging(const BaggingModel& model, const SparseBinaryVector& x);
std::vector<Prediction> predict_bagging_prefixes(const BaggingModel& model,
                                                 const SparseBinaryVector& x);

// ---- uniform dispatch ----

using MultiLabelModel = std::variant<BRModel, LPModel, AdaBoostMHModel, BaggingModel>;

Prediction predict_any(const MultiLabelModel& model, const SparseBinaryVector& x);
// Batch prediction fans out across instances.
std::vector<Prediction> predict_batch(const MultiLabelModel& model,
                                      const std::vector<SparseBinaryVector>& xs);
std::vector<Prediction> predict_dataset(const MultiLabelModel& model,
                                        const MultiLabelDataset& dataset);

}  // namespace mltc
