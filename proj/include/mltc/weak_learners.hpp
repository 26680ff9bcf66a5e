#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "mltc/corpus.hpp"
#include "mltc/smo.hpp"

namespace mltc {

// Binary training set with one normalized weight per instance. This is the
// contract every ensemble speaks to every weak learner.
struct WeightedBinaryDataset {
    std::vector<SparseBinaryVector> vectors;
    std::vector<int> targets;     // -1 or +1
    std::vector<double> weights;  // >= 0, sum to 1 within 1e-9
    int dimension = 0;

    std::size_t size() const { return vectors.size(); }
    void validate() const;  // throws ConfigError

    static WeightedBinaryDataset with_uniform_weights(std::vector<SparseBinaryVector> vectors,
                                                      std::vector<int> targets, int dimension);
};

// Weighted multiclass set; targets are dense class ids. Used by Label
// Powerset with the natively multiclass learners.
struct WeightedMulticlassDataset {
    std::vector<SparseBinaryVector> vectors;
    std::vector<int> targets;  // 0..n_classes-1
    std::vector<double> weights;
    int n_classes = 2;
    int dimension = 0;

    std::size_t size() const { return vectors.size(); }
};

enum class WeakKind { stump, tree, forest, naive_bayes, smo };

const char* weak_kind_name(WeakKind kind);
WeakKind weak_kind_from_name(const std::string& name);  // throws ConfigError

struct WeakSpec {
    WeakKind kind = WeakKind::stump;

    int tree_max_depth = 0;  // 0 = unlimited
    double tree_min_leaf_weight = 1e-6;
    double tree_pruning_cf = 0.25;
    bool tree_prune = true;

    int forest_trees = 10;
    int forest_feature_subsample = 0;  // 0 = floor(sqrt(dimension))

    double nb_alpha = 1.0;

    double smo_c = 1.0;
    double smo_tolerance = 1e-3;
    int smo_max_passes = 200;

    std::uint64_t seed = 0;

    void validate() const;  // throws ConfigError
    WeakSpec with_seed(std::uint64_t s) const {
        WeakSpec copy = *this;
        copy.seed = s;
        return copy;
    }
};

// ---- learned state ----

struct ConstantModel {
    int sign = 1;
};

// Predicts sign_present when the feature is set, sign_absent otherwise.
struct StumpModel {
    int feature = 0;
    int sign_present = 1;
    int sign_absent = -1;
};

struct TreeNode {
    int feature = -1;  // -1 = leaf
    int absent = -1;   // child index when feature missing
    int present = -1;  // child index when feature set
    int leaf_class = 0;
};

struct TreeModel {
    std::vector<TreeNode> nodes;  // nodes[0] = root
    int n_classes = 2;

    int predict_class(const SparseBinaryVector& x) const;
};

struct ForestModel {
    std::vector<TreeModel> trees;
    int n_classes = 2;

    int predict_class(const SparseBinaryVector& x) const;
    std::vector<int> vote_counts(const SparseBinaryVector& x) const;
};

struct NaiveBayesModel {
    int n_classes = 2;
    // score(c, x) = base[c] + sum over present features of delta[c][f];
    // base folds the log prior and every absence factor (natural log).
    std::vector<double> base;
    std::vector<std::vector<double>> delta;

    std::vector<double> class_scores(const SparseBinaryVector& x) const;
    int predict_class(const SparseBinaryVector& x) const;
};

struct BinaryModel {
    int dimension = 0;
    std::variant<ConstantModel, StumpModel, TreeModel, ForestModel, NaiveBayesModel, SmoModel>
        impl;
};

struct BinaryPrediction {
    int sign = 1;      // score 0 resolves to +1
    double score = 0;  // margin for smo, log-odds for naive bayes,
                       // vote fraction in [-1,1] for forest, leaf sign otherwise
};

// ---- operations ----

// Trains the learner selected by spec.kind. Every learner returns a model
// whose weighted training error never exceeds the constant majority-sign
// predictor's (stump and tree by construction, the rest by fallback).
BinaryModel train_weak(const WeakSpec& spec, const WeightedBinaryDataset& data);

BinaryPrediction predict(const BinaryModel& model, const SparseBinaryVector& x);

double weighted_error(const BinaryModel& model, const WeightedBinaryDataset& data);

// ---- multiclass cores (shared by the binary wrappers and Label Powerset) ----

struct TreeParams {
    int max_depth = 0;
    double min_leaf_weight = 1e-6;
    double pruning_cf = 0.25;
    bool prune = true;
    int feature_subsample = 0;  // 0 = consider every feature
};

TreeModel train_tree(const WeightedMulticlassDataset& data, const TreeParams& params,
                     std::uint64_t seed);
ForestModel train_forest(const WeightedMulticlassDataset& data, const TreeParams& tree_params,
                         int n_trees, std::uint64_t seed);
NaiveBayesModel train_naive_bayes(const WeightedMulticlassDataset& data, double alpha);

}  // namespace mltc
