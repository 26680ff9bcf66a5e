#include "mltc/weak_learners.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "mltc/errors.hpp"
#include "mltc/parallel.hpp"
#include "mltc/rng.hpp"

namespace mltc {

// ---- datasets ----

void WeightedBinaryDataset::validate() const {
    if (vectors.empty()) throw ConfigError("weighted dataset: no instances");
    if (vectors.size() != targets.size() || vectors.size() != weights.size())
        throw ConfigError("weighted dataset: array lengths differ");
    double sum = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (targets[i] != -1 && targets[i] != 1)
            throw ConfigError("weighted dataset: targets must be -1 or +1");
        if (weights[i] < 0.0) throw ConfigError("weighted dataset: negative weight");
        if (vectors[i].dimension != dimension)
            throw ConfigError("weighted dataset: mixed dimensions");
        sum += weights[i];
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ConfigError("weighted dataset: weights must sum to 1");
}

WeightedBinaryDataset WeightedBinaryDataset::with_uniform_weights(
    std::vector<SparseBinaryVector> vectors, std::vector<int> targets, int dimension) {
    WeightedBinaryDataset data;
    const std::size_t n = vectors.size();
    data.vectors = std::move(vectors);
    data.targets = std::move(targets);
    data.weights.assign(n, n ? 1.0 / double(n) : 0.0);
    data.dimension = dimension;
    return data;
}

// ---- spec ----

const char* weak_kind_name(WeakKind kind) {
    switch (kind) {
        case WeakKind::stump: return "stump";
        case WeakKind::tree: return "tree";
        case WeakKind::forest: return "forest";
        case WeakKind::naive_bayes: return "nb";
        case WeakKind::smo: return "smo";
    }
    return "?";
}

WeakKind weak_kind_from_name(const std::string& name) {
    if (name == "stump") return WeakKind::stump;
    if (name == "tree") return WeakKind::tree;
    if (name == "forest") return WeakKind::forest;
    if (name == "nb" || name == "naive_bayes") return WeakKind::naive_bayes;
    if (name == "smo") return WeakKind::smo;
    throw ConfigError("unknown weak learner '" + name + "'");
}

void WeakSpec::validate() const {
    if (tree_max_depth < 0) throw ConfigError("weak spec: tree_max_depth must be >= 0");
    if (tree_min_leaf_weight <= 0.0)
        throw ConfigError("weak spec: tree_min_leaf_weight must be positive");
    if (tree_pruning_cf <= 0.0 || tree_pruning_cf >= 1.0)
        throw ConfigError("weak spec: tree_pruning_cf must be in (0, 1)");
    if (forest_trees < 1) throw ConfigError("weak spec: forest_trees must be >= 1");
    if (forest_feature_subsample < 0)
        throw ConfigError("weak spec: forest_feature_subsample must be >= 0");
    if (nb_alpha <= 0.0) throw ConfigError("weak spec: nb_alpha must be positive");
    if (smo_c <= 0.0) throw ConfigError("weak spec: smo C must be positive");
    if (smo_tolerance <= 0.0) throw ConfigError("weak spec: smo tolerance must be positive");
    if (smo_max_passes < 1) throw ConfigError("weak spec: smo max_passes must be >= 1");
}

// ---- shared helpers ----

namespace {

double entropy_of(const std::vector<double>& weights, double total) {
    if (total <= 0.0) return 0.0;
    double h = 0.0;
    for (double w : weights) {
        if (w <= 0.0) continue;
        double p = w / total;
        h -= p * std::log2(p);
    }
    return h;
}

int argmax_class(const std::vector<double>& scores) {
    int best = 0;
    for (int c = 1; c < (int)scores.size(); ++c)
        if (scores[std::size_t(c)] > scores[std::size_t(best)]) best = c;
    return best;
}

}  // namespace

// ---- decision stump ----

namespace {

struct StumpCandidate {
    double error;
    int sign_present;
    int sign_absent;
};

// Exhaustive weighted search over (feature, leaf signs), including the
// constant predictors, so the returned model never loses to the majority
// sign. Per-feature sums run over a postings list in fixed instance order;
// results are identical for any thread count.
BinaryModel train_stump(const WeightedBinaryDataset& data) {
    const std::size_t n = data.size();
    const int f_count = data.dimension;

    double w_pos = 0.0, w_neg = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        (data.targets[i] > 0 ? w_pos : w_neg) += data.weights[i];

    std::vector<std::vector<int>> postings(std::size_t(f_count));
    for (std::size_t i = 0; i < n; ++i)
        for (int f : data.vectors[i].indices) postings[std::size_t(f)].push_back((int)i);

    std::vector<StumpCandidate> best_per_feature(std::size_t(f_count));
    parallel::parallel_for(std::size_t(f_count), [&](std::size_t f) {
        double wp1 = 0.0, wn1 = 0.0;
        for (int i : postings[f])
            (data.targets[std::size_t(i)] > 0 ? wp1 : wn1) += data.weights[std::size_t(i)];
        const double err_pos_neg = wn1 + (w_pos - wp1);  // present -> +1, absent -> -1
        const double err_neg_pos = wp1 + (w_neg - wn1);  // present -> -1, absent -> +1
        if (err_pos_neg <= err_neg_pos)
            best_per_feature[f] = {err_pos_neg, 1, -1};
        else
            best_per_feature[f] = {err_neg_pos, -1, 1};
    });

    const int majority = w_pos >= w_neg ? 1 : -1;
    double best_error = std::min(w_pos, w_neg);
    int best_feature = -1;
    for (int f = 0; f < f_count; ++f) {
        if (best_per_feature[std::size_t(f)].error < best_error) {
            best_error = best_per_feature[std::size_t(f)].error;
            best_feature = f;
        }
    }

    BinaryModel model;
    model.dimension = data.dimension;
    if (best_feature < 0) {
        model.impl = ConstantModel{majority};
    } else {
        const StumpCandidate& c = best_per_feature[std::size_t(best_feature)];
        model.impl = StumpModel{best_feature, c.sign_present, c.sign_absent};
    }
    return model;
}

}  // namespace

// ---- decision tree ----

namespace {

// Inverse standard normal CDF (Acklam's rational approximation).
double inverse_normal(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425, p_high = 1.0 - p_low;
    double q, r;
    if (p < p_low) {
        q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= p_high) {
        q = p - 0.5;
        r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

// C4.5-style pessimistic additional error count for a node covering n
// (possibly fractional) instances with e misclassified.
double added_errors(double n, double e, double cf) {
    if (n <= 0.0) return 0.0;
    if (e < 1.0) {
        double base = n * (1.0 - std::pow(cf, 1.0 / n));
        if (e <= 0.0) return base;
        return base + e * (added_errors(n, 1.0, cf) - base);
    }
    if (e + 0.5 >= n) return std::max(n - e, 0.0);
    const double z = inverse_normal(1.0 - cf);
    const double f = (e + 0.5) / n;
    const double r =
        (f + z * z / (2.0 * n) + z * std::sqrt(f / n - f * f / n + z * z / (4.0 * n * n))) /
        (1.0 + z * z / n);
    return r * n - e;
}

struct BuildNode {
    int feature = -1;
    std::unique_ptr<BuildNode> absent, present;
    double total_weight = 0.0;
    double error_weight = 0.0;  // total minus majority class weight
    int majority = 0;
};

struct TreeBuilder {
    const WeightedMulticlassDataset& data;
    const TreeParams& params;
    std::vector<double> scaled;  // weights * n, so estimates behave like counts
    Rng rng;
    std::vector<int> feature_pool;

    TreeBuilder(const WeightedMulticlassDataset& d, const TreeParams& p, std::uint64_t seed)
        : data(d), params(p), rng(seed) {
        scaled.resize(d.size());
        const double n = double(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) scaled[i] = d.weights[i] * n;
        feature_pool.resize(std::size_t(d.dimension));
        for (int f = 0; f < d.dimension; ++f) feature_pool[std::size_t(f)] = f;
    }

    std::unique_ptr<BuildNode> build(const std::vector<int>& subset, int depth) {
        auto node = std::make_unique<BuildNode>();
        const int n_classes = data.n_classes;
        std::vector<double> class_w(std::size_t(n_classes), 0.0);
        bool pure = true;
        for (std::size_t k = 0; k < subset.size(); ++k) {
            const auto i = std::size_t(subset[k]);
            class_w[std::size_t(data.targets[i])] += scaled[i];
            if (data.targets[i] != data.targets[std::size_t(subset[0])]) pure = false;
        }
        node->majority = argmax_class(class_w);
        for (double w : class_w) node->total_weight += w;
        node->error_weight = node->total_weight - class_w[std::size_t(node->majority)];

        if (pure || subset.size() < 2) return node;
        if (params.max_depth > 0 && depth >= params.max_depth) return node;

        // Per-feature class weights on the "present" side, one fixed-order pass.
        std::vector<double> present_w(std::size_t(data.dimension) * std::size_t(n_classes), 0.0);
        std::vector<int> present_count(std::size_t(data.dimension), 0);
        for (int idx : subset) {
            const auto i = std::size_t(idx);
            for (int f : data.vectors[i].indices) {
                present_w[std::size_t(f) * std::size_t(n_classes) +
                          std::size_t(data.targets[i])] += scaled[i];
                present_count[std::size_t(f)]++;
            }
        }

        const std::vector<int>& candidates = sample_features();
        const double node_entropy = entropy_of(class_w, node->total_weight);
        int best_feature = -1, fallback_feature = -1;
        double best_ratio = 0.0;
        std::vector<double> side_p(std::size_t(n_classes)), side_a(std::size_t(n_classes));
        for (int f : candidates) {
            const int count_p = present_count[std::size_t(f)];
            const int count_a = (int)subset.size() - count_p;
            if (count_p < 1 || count_a < 1) continue;
            double wp_total = 0.0;
            for (int c = 0; c < n_classes; ++c) {
                side_p[std::size_t(c)] =
                    present_w[std::size_t(f) * std::size_t(n_classes) + std::size_t(c)];
                side_a[std::size_t(c)] = class_w[std::size_t(c)] - side_p[std::size_t(c)];
                wp_total += side_p[std::size_t(c)];
            }
            const double wa_total = node->total_weight - wp_total;
            if (wp_total < params.min_leaf_weight || wa_total < params.min_leaf_weight) continue;
            if (fallback_feature < 0) fallback_feature = f;
            const double pp = wp_total / node->total_weight;
            const double gain = node_entropy - pp * entropy_of(side_p, wp_total) -
                                (1.0 - pp) * entropy_of(side_a, wa_total);
            if (gain <= 1e-12) continue;
            const double split_info = -pp * std::log2(pp) - (1.0 - pp) * std::log2(1.0 - pp);
            const double ratio = gain / split_info;
            if (ratio > best_ratio) {
                best_ratio = ratio;
                best_feature = f;
            }
        }
        // With no informative split left, an impure node still separates on
        // the first usable feature; only truly contradictory duplicates
        // (identical vectors, different targets) stay mixed.
        if (best_feature < 0) best_feature = fallback_feature;
        if (best_feature < 0) return node;

        std::vector<int> subset_absent, subset_present;
        for (int idx : subset) {
            if (data.vectors[std::size_t(idx)].contains(best_feature))
                subset_present.push_back(idx);
            else
                subset_absent.push_back(idx);
        }
        node->feature = best_feature;
        node->absent = build(subset_absent, depth + 1);
        node->present = build(subset_present, depth + 1);
        return node;
    }

    const std::vector<int>& sample_features() {
        const int f_count = data.dimension;
        if (params.feature_subsample <= 0 || params.feature_subsample >= f_count) {
            static thread_local std::vector<int> all;
            all.resize(std::size_t(f_count));
            for (int f = 0; f < f_count; ++f) all[std::size_t(f)] = f;
            return all;
        }
        // Partial Fisher-Yates over a persistent pool; draws stay in spec
        // order by sorting the chosen block.
        static thread_local std::vector<int> chosen;
        const int m = params.feature_subsample;
        for (int k = 0; k < m; ++k) {
            auto j = std::size_t(k) + std::size_t(rng.next_below(std::uint64_t(f_count - k)));
            std::swap(feature_pool[std::size_t(k)], feature_pool[j]);
        }
        chosen.assign(feature_pool.begin(), feature_pool.begin() + m);
        std::sort(chosen.begin(), chosen.end());
        return chosen;
    }

    double prune(BuildNode* node) {
        const double as_leaf =
            node->error_weight + added_errors(node->total_weight, node->error_weight,
                                              params.pruning_cf);
        if (node->feature < 0) return as_leaf;
        const double as_subtree = prune(node->absent.get()) + prune(node->present.get());
        if (as_leaf <= as_subtree + 0.1) {
            node->feature = -1;
            node->absent.reset();
            node->present.reset();
            return as_leaf;
        }
        return as_subtree;
    }
};

int flatten(const BuildNode* node, TreeModel& model) {
    const int idx = (int)model.nodes.size();
    model.nodes.emplace_back();
    model.nodes[std::size_t(idx)].feature = node->feature;
    model.nodes[std::size_t(idx)].leaf_class = node->majority;
    if (node->feature >= 0) {
        const int absent = flatten(node->absent.get(), model);
        const int present = flatten(node->present.get(), model);
        model.nodes[std::size_t(idx)].absent = absent;
        model.nodes[std::size_t(idx)].present = present;
    }
    return idx;
}

}  // namespace

TreeModel train_tree(const WeightedMulticlassDataset& data, const TreeParams& params,
                     std::uint64_t seed) {
    if (data.size() == 0) throw ConfigError("tree: no instances");
    TreeBuilder builder(data, params, seed);
    std::vector<int> all(std::size_t(data.size()));
    for (std::size_t i = 0; i < data.size(); ++i) all[i] = (int)i;
    auto root = builder.build(all, 0);
    if (params.prune) builder.prune(root.get());

    TreeModel model;
    model.n_classes = data.n_classes;
    flatten(root.get(), model);
    return model;
}

int TreeModel::predict_class(const SparseBinaryVector& x) const {
    int idx = 0;
    while (nodes[std::size_t(idx)].feature >= 0) {
        const TreeNode& node = nodes[std::size_t(idx)];
        idx = x.contains(node.feature) ? node.present : node.absent;
    }
    return nodes[std::size_t(idx)].leaf_class;
}

// ---- random forest ----

ForestModel train_forest(const WeightedMulticlassDataset& data, const TreeParams& tree_params,
                         int n_trees, std::uint64_t seed) {
    if (n_trees < 1) throw ConfigError("forest: n_trees must be >= 1");
    ForestModel model;
    model.n_classes = data.n_classes;
    model.trees.resize(std::size_t(n_trees));

    std::vector<double> cumulative(data.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        acc += data.weights[i];
        cumulative[i] = acc;
    }

    parallel::parallel_for(std::size_t(n_trees), [&](std::size_t t) {
        const std::uint64_t tree_seed = hash_seed(seed, t);
        Rng boot(hash_seed(tree_seed, 0));

        // Bootstrap on weighted data: n draws with replacement, proportional
        // to the instance weights, then uniform weights on the resample.
        WeightedMulticlassDataset sample;
        sample.n_classes = data.n_classes;
        sample.dimension = data.dimension;
        const std::size_t n = data.size();
        sample.vectors.reserve(n);
        sample.targets.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double u = boot.next_unit() * acc;
            const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
            const auto i = std::size_t(std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                                                (std::ptrdiff_t)n - 1));
            sample.vectors.push_back(data.vectors[i]);
            sample.targets.push_back(data.targets[i]);
        }
        sample.weights.assign(n, 1.0 / double(n));
        model.trees[t] = train_tree(sample, tree_params, hash_seed(tree_seed, 1));
    });
    return model;
}

std::vector<int> ForestModel::vote_counts(const SparseBinaryVector& x) const {
    std::vector<int> votes(std::size_t(n_classes), 0);
    for (const TreeModel& tree : trees) votes[std::size_t(tree.predict_class(x))]++;
    return votes;
}

int ForestModel::predict_class(const SparseBinaryVector& x) const {
    const std::vector<int> votes = vote_counts(x);
    int best = 0;
    for (int c = 1; c < n_classes; ++c)
        if (votes[std::size_t(c)] > votes[std::size_t(best)]) best = c;
    return best;
}

// ---- naive bayes ----

NaiveBayesModel train_naive_bayes(const WeightedMulticlassDataset& data, double alpha) {
    if (alpha <= 0.0) throw ConfigError("naive bayes: alpha must be positive");
    const int n_classes = data.n_classes;
    const int f_count = data.dimension;
    const double n = double(data.size());

    std::vector<double> class_w(std::size_t(n_classes), 0.0);
    std::vector<std::vector<double>> feat_w(std::size_t(n_classes),
                                            std::vector<double>(std::size_t(f_count), 0.0));
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double w = data.weights[i] * n;  // effective counts
        const auto c = std::size_t(data.targets[i]);
        class_w[c] += w;
        for (int f : data.vectors[i].indices) feat_w[c][std::size_t(f)] += w;
    }
    double total_w = 0.0;
    for (double w : class_w) total_w += w;
    for (double w : class_w)
        internal_check(w > 0.0, "naive bayes requires positive weight in every class");

    NaiveBayesModel model;
    model.n_classes = n_classes;
    model.base.resize(std::size_t(n_classes));
    model.delta.assign(std::size_t(n_classes), std::vector<double>(std::size_t(f_count), 0.0));
    for (int c = 0; c < n_classes; ++c) {
        const auto ci = std::size_t(c);
        double base = std::log(class_w[ci] / total_w);
        for (int f = 0; f < f_count; ++f) {
            const double p =
                (feat_w[ci][std::size_t(f)] + alpha) / (class_w[ci] + 2.0 * alpha);
            base += std::log1p(-p);
            model.delta[ci][std::size_t(f)] = std::log(p) - std::log1p(-p);
        }
        model.base[ci] = base;
    }
    return model;
}

std::vector<double> NaiveBayesModel::class_scores(const SparseBinaryVector& x) const {
    std::vector<double> scores = base;
    for (int f : x.indices)
        for (int c = 0; c < n_classes; ++c) scores[std::size_t(c)] += delta[std::size_t(c)][std::size_t(f)];
    return scores;
}

int NaiveBayesModel::predict_class(const SparseBinaryVector& x) const {
    return argmax_class(class_scores(x));
}

// ---- dispatch ----

namespace {

WeightedMulticlassDataset to_two_class(const WeightedBinaryDataset& data) {
    WeightedMulticlassDataset mc;
    mc.vectors = data.vectors;
    mc.weights = data.weights;
    mc.dimension = data.dimension;
    mc.n_classes = 2;
    mc.targets.resize(data.targets.size());
    for (std::size_t i = 0; i < data.targets.size(); ++i)
        mc.targets[i] = data.targets[i] > 0 ? 1 : 0;
    return mc;
}

int forest_subsample(const WeakSpec& spec, int dimension) {
    if (spec.forest_feature_subsample > 0) return spec.forest_feature_subsample;
    return std::max(1, (int)std::floor(std::sqrt(double(dimension))));
}

}  // namespace

BinaryModel train_weak(const WeakSpec& spec, const WeightedBinaryDataset& data) {
    spec.validate();
    data.validate();

    double w_pos = 0.0, w_neg = 0.0;
    std::size_t n_pos = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data.targets[i] > 0) {
            w_pos += data.weights[i];
            ++n_pos;
        } else {
            w_neg += data.weights[i];
        }
    }
    const int majority = w_pos >= w_neg ? 1 : -1;

    BinaryModel model;
    model.dimension = data.dimension;
    if (n_pos == 0 || n_pos == data.size()) {
        model.impl = ConstantModel{n_pos == 0 ? -1 : 1};
        return model;
    }

    bool guard = false;  // fall back to the majority sign if trained worse
    switch (spec.kind) {
        case WeakKind::stump:
            return train_stump(data);
        case WeakKind::tree: {
            TreeParams params{spec.tree_max_depth, spec.tree_min_leaf_weight,
                              spec.tree_pruning_cf, spec.tree_prune, 0};
            model.impl = train_tree(to_two_class(data), params, spec.seed);
            break;
        }
        case WeakKind::forest: {
            if (w_pos <= 0.0 || w_neg <= 0.0) {
                model.impl = ConstantModel{majority};
                return model;
            }
            TreeParams params{0, spec.tree_min_leaf_weight, spec.tree_pruning_cf, false,
                              forest_subsample(spec, data.dimension)};
            model.impl = train_forest(to_two_class(data), params, spec.forest_trees, spec.seed);
            guard = true;
            break;
        }
        case WeakKind::naive_bayes: {
            if (w_pos <= 0.0 || w_neg <= 0.0) {
                model.impl = ConstantModel{majority};
                return model;
            }
            model.impl = train_naive_bayes(to_two_class(data), spec.nb_alpha);
            guard = true;
            break;
        }
        case WeakKind::smo: {
            if (w_pos <= 0.0 || w_neg <= 0.0) {
                model.impl = ConstantModel{majority};
                return model;
            }
            std::vector<SparseRealVector> x;
            x.reserve(data.size());
            for (const auto& v : data.vectors) x.push_back(SparseRealVector::from_binary(v));
            std::vector<double> box(data.size());
            for (std::size_t i = 0; i < data.size(); ++i)
                box[i] = spec.smo_c * data.weights[i] * double(data.size());
            SmoParams params{spec.smo_c, spec.smo_tolerance, spec.smo_max_passes};
            model.impl = solve_smo(x, data.targets, box, params, spec.seed);
            guard = true;
            break;
        }
    }

    if (guard) {
        const double trained_error = weighted_error(model, data);
        if (trained_error > std::min(w_pos, w_neg) + 1e-12) {
            model.impl = ConstantModel{majority};
        }
    }
    return model;
}

BinaryPrediction predict(const BinaryModel& model, const SparseBinaryVector& x) {
    if (x.dimension != model.dimension)
        throw DataError("predict: vector dimension " + std::to_string(x.dimension) +
                        " does not match model dimension " + std::to_string(model.dimension));

    struct Visitor {
        const SparseBinaryVector& x;

        BinaryPrediction operator()(const ConstantModel& m) const {
            return {m.sign, double(m.sign)};
        }
        BinaryPrediction operator()(const StumpModel& m) const {
            const int sign = x.contains(m.feature) ? m.sign_present : m.sign_absent;
            return {sign, double(sign)};
        }
        BinaryPrediction operator()(const TreeModel& m) const {
            const int sign = m.predict_class(x) == 1 ? 1 : -1;
            return {sign, double(sign)};
        }
        BinaryPrediction operator()(const ForestModel& m) const {
            const std::vector<int> votes = m.vote_counts(x);
            const double score =
                double(votes[1] - votes[0]) / double(m.trees.size());
            return {score >= 0.0 ? 1 : -1, score};
        }
        BinaryPrediction operator()(const NaiveBayesModel& m) const {
            const std::vector<double> scores = m.class_scores(x);
            const double score = scores[1] - scores[0];
            return {score >= 0.0 ? 1 : -1, score};
        }
        BinaryPrediction operator()(const SmoModel& m) const {
            const double score = m.decision(x);
            return {score >= 0.0 ? 1 : -1, score};
        }
    };
    return std::visit(Visitor{x}, model.impl);
}

double weighted_error(const BinaryModel& model, const WeightedBinaryDataset& data) {
    double err = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i)
        if (predict(model, data.vectors[i]).sign != data.targets[i]) err += data.weights[i];
    return err;
}

}  // namespace mltc
