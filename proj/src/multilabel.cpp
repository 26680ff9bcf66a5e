#include "mltc/multilabel.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mltc/errors.hpp"
#include "mltc/parallel.hpp"
#include "mltc/rng.hpp"

namespace mltc {

// ---- Binary Relevance ----

BRModel train_br(const MultiLabelDataset& train, const WeakSpec& weak) {
    const int q = train.label_count();
    if (q < 1) throw ConfigError("train_br: empty label space");
    if (train.size() < 1) throw ConfigError("train_br: empty training set");
    weak.validate();

    BRModel model;
    model.space = train.space;
    model.dimension = train.dimension;
    model.per_label.resize(std::size_t(q));

    parallel::parallel_for(std::size_t(q), [&](std::size_t l) {
        std::vector<SparseBinaryVector> vectors;
        std::vector<int> targets;
        vectors.reserve(train.instances.size());
        targets.reserve(train.instances.size());
        for (const auto& inst : train.instances) {
            vectors.push_back(inst.vector);
            targets.push_back(inst.labels.contains((int)l) ? 1 : -1);
        }
        auto data = WeightedBinaryDataset::with_uniform_weights(
            std::move(vectors), std::move(targets), train.dimension);
        model.per_label[l] = train_weak(weak.with_seed(hash_seed(weak.seed, l)), data);
    });
    return model;
}

Prediction predict_br(const BRModel& model, const SparseBinaryVector& x) {
    Prediction out;
    out.scores.resize(model.per_label.size());
    for (std::size_t l = 0; l < model.per_label.size(); ++l) {
        const BinaryPrediction p = predict(model.per_label[l], x);
        out.scores[l] = p.score;
        if (p.sign > 0) out.labels.insert((int)l);
    }
    return out;
}

// ---- Label Powerset ----

LPModel train_lp(const MultiLabelDataset& train, const WeakSpec& weak) {
    if (train.size() < 1) throw ConfigError("train_lp: empty training set");
    weak.validate();

    LPModel model;
    model.space = train.space;
    model.dimension = train.dimension;
    model.weak_kind = weak.kind;

    // Distinct training label sets become classes; ids follow the sets'
    // lexicographic order so the codebook is independent of instance order.
    std::map<LabelSet, int> class_of;
    for (const auto& inst : train.instances) class_of.emplace(inst.labels, 0);
    int next_id = 0;
    for (auto& [set, id] : class_of) {
        id = next_id++;
        model.codebook.push_back(set);
    }
    const int n_classes = next_id;

    std::vector<int> targets;
    targets.reserve(train.instances.size());
    model.priors.assign(std::size_t(n_classes), 0.0);
    for (const auto& inst : train.instances) {
        const int cls = class_of.at(inst.labels);
        targets.push_back(cls);
        model.priors[std::size_t(cls)] += 1.0;
    }
    for (double& p : model.priors) p /= double(train.size());

    if (weak.kind == WeakKind::stump || weak.kind == WeakKind::smo) {
        OvrBattery battery;
        battery.per_class.resize(std::size_t(n_classes));
        parallel::parallel_for(std::size_t(n_classes), [&](std::size_t c) {
            std::vector<SparseBinaryVector> vectors;
            std::vector<int> binary_targets;
            vectors.reserve(train.instances.size());
            binary_targets.reserve(train.instances.size());
            for (std::size_t i = 0; i < train.instances.size(); ++i) {
                vectors.push_back(train.instances[i].vector);
                binary_targets.push_back(targets[i] == (int)c ? 1 : -1);
            }
            auto data = WeightedBinaryDataset::with_uniform_weights(
                std::move(vectors), std::move(binary_targets), train.dimension);
            battery.per_class[c] = train_weak(weak.with_seed(hash_seed(weak.seed, c)), data);
        });
        model.predictor = std::move(battery);
        return model;
    }

    WeightedMulticlassDataset data;
    data.n_classes = n_classes;
    data.dimension = train.dimension;
    data.targets = std::move(targets);
    data.vectors.reserve(train.instances.size());
    for (const auto& inst : train.instances) data.vectors.push_back(inst.vector);
    data.weights.assign(train.instances.size(), 1.0 / double(train.size()));

    switch (weak.kind) {
        case WeakKind::tree: {
            TreeParams params{weak.tree_max_depth, weak.tree_min_leaf_weight,
                              weak.tree_pruning_cf, weak.tree_prune, 0};
            model.predictor = train_tree(data, params, weak.seed);
            break;
        }
        case WeakKind::forest: {
            int mtry = weak.forest_feature_subsample > 0
                           ? weak.forest_feature_subsample
                           : std::max(1, (int)std::floor(std::sqrt(double(train.dimension))));
            TreeParams params{0, weak.tree_min_leaf_weight, weak.tree_pruning_cf, false, mtry};
            model.predictor = train_forest(data, params, weak.forest_trees, weak.seed);
            break;
        }
        case WeakKind::naive_bayes:
            model.predictor = train_naive_bayes(data, weak.nb_alpha);
            break;
        default:
            throw InternalError("train_lp: unexpected weak kind");
    }
    return model;
}

namespace {

int lp_winning_class(const LPModel& model, const SparseBinaryVector& x) {
    struct Visitor {
        const LPModel& model;
        const SparseBinaryVector& x;

        int operator()(const TreeModel& m) const { return m.predict_class(x); }
        int operator()(const ForestModel& m) const { return m.predict_class(x); }
        int operator()(const NaiveBayesModel& m) const { return m.predict_class(x); }
        int operator()(const OvrBattery& m) const {
            int best = 0;
            double best_score = predict(m.per_class[0], x).score;
            for (int c = 1; c < (int)m.per_class.size(); ++c) {
                const double score = predict(m.per_class[std::size_t(c)], x).score;
                if (score > best_score ||
                    (score == best_score &&
                     model.priors[std::size_t(c)] > model.priors[std::size_t(best)])) {
                    best = c;
                    best_score = score;
                }
            }
            return best;
        }
    };
    return std::visit(Visitor{model, x}, model.predictor);
}

}  // namespace

Prediction predict_lp(const LPModel& model, const SparseBinaryVector& x) {
    const int cls = lp_winning_class(model, x);
    Prediction out;
    out.labels = model.codebook[std::size_t(cls)];
    out.scores.assign(std::size_t(model.space.size()), 0.0);
    for (int l : out.labels.ids()) out.scores[std::size_t(l)] = 1.0;
    return out;
}

// ---- AdaBoost.MH ----

SparseBinaryVector augment_with_label(const SparseBinaryVector& x, int label, int q) {
    SparseBinaryVector out;
    out.dimension = x.dimension + q;
    out.indices = x.indices;
    out.indices.push_back(x.dimension + label);
    return out;
}

AdaBoostMHModel train_adaboost_mh(const MultiLabelDataset& train, const WeakSpec& weak,
                                  int rounds, BoostTrace* trace) {
    if (rounds < 1) throw ConfigError("train_adaboost_mh: rounds must be >= 1");
    if (train.size() < 1) throw ConfigError("train_adaboost_mh: empty training set");
    weak.validate();

    const int q = train.label_count();
    const std::size_t n = train.instances.size();
    const std::size_t pairs = n * std::size_t(q);

    AdaBoostMHModel model;
    model.space = train.space;
    model.feature_dimension = train.dimension;

    // One (instance, label) pair per augmented example; built once, the
    // distribution is the only thing that changes between rounds.
    WeightedBinaryDataset pair_data;
    pair_data.dimension = train.dimension + q;
    pair_data.vectors.reserve(pairs);
    pair_data.targets.reserve(pairs);
    for (std::size_t i = 0; i < n; ++i) {
        for (int l = 0; l < q; ++l) {
            pair_data.vectors.push_back(
                augment_with_label(train.instances[i].vector, l, q));
            pair_data.targets.push_back(train.instances[i].labels.contains(l) ? 1 : -1);
        }
    }
    pair_data.weights.assign(pairs, 1.0 / double(pairs));
    if (trace) trace->distributions.push_back(pair_data.weights);

    constexpr double kEpsClamp = 1e-10;
    std::vector<int> predicted(pairs);
    for (int t = 0; t < rounds; ++t) {
        BinaryModel weak_model =
            train_weak(weak.with_seed(hash_seed(weak.seed, std::uint64_t(t))), pair_data);

        parallel::parallel_for(pairs, [&](std::size_t p) {
            predicted[p] = predict(weak_model, pair_data.vectors[p]).sign;
        });
        double raw_eps = 0.0;
        for (std::size_t p = 0; p < pairs; ++p)
            if (predicted[p] != pair_data.targets[p]) raw_eps += pair_data.weights[p];

        if (raw_eps >= 0.5) break;  // degenerate round, not recorded

        const double eps = std::clamp(raw_eps, kEpsClamp, 0.5 - kEpsClamp);
        BoostRound round;
        round.weak = std::move(weak_model);
        round.epsilon = raw_eps;
        round.alpha = 0.5 * std::log((1.0 - eps) / eps);
        round.z = 2.0 * std::sqrt(eps * (1.0 - eps));
        const double alpha = round.alpha;
        model.rounds.push_back(std::move(round));

        if (raw_eps == 0.0) break;  // perfect hypothesis, keep and stop

        const double up = std::exp(alpha), down = std::exp(-alpha);
        double sum = 0.0;
        for (std::size_t p = 0; p < pairs; ++p) {
            pair_data.weights[p] *= (predicted[p] != pair_data.targets[p]) ? up : down;
            sum += pair_data.weights[p];
        }
        for (std::size_t p = 0; p < pairs; ++p) pair_data.weights[p] /= sum;
        if (trace) trace->distributions.push_back(pair_data.weights);
    }

    if (model.rounds.empty()) {
        // Every attempted round was degenerate; fall back to the
        // majority-sign pair predictor so the model still decides.
        double w_pos = 0.0;
        for (std::size_t p = 0; p < pairs; ++p)
            if (pair_data.targets[p] > 0) w_pos += 1.0 / double(pairs);
        const int sign = w_pos >= 0.5 ? 1 : -1;
        BinaryModel constant;
        constant.dimension = pair_data.dimension;
        constant.impl = ConstantModel{sign};
        const double raw_eps = std::min(w_pos, 1.0 - w_pos);
        const double eps = std::clamp(raw_eps, kEpsClamp, 0.5 - kEpsClamp);
        BoostRound round;
        round.weak = std::move(constant);
        round.epsilon = raw_eps;
        round.alpha = 0.5 * std::log((1.0 - eps) / eps);
        round.z = 2.0 * std::sqrt(eps * (1.0 - eps));
        model.rounds.push_back(std::move(round));
    }
    return model;
}

namespace {

Prediction prediction_from_scores(const std::vector<double>& scores) {
    Prediction out;
    out.scores = scores;
    for (std::size_t l = 0; l < scores.size(); ++l)
        if (scores[l] > 0.0) out.labels.insert((int)l);
    return out;
}

}  // namespace

Prediction predict_adaboost_mh(const AdaBoostMHModel& model, const SparseBinaryVector& x) {
    const int q = model.space.size();
    std::vector<double> scores(std::size_t(q), 0.0);
    for (const BoostRound& round : model.rounds) {
        for (int l = 0; l < q; ++l) {
            const SparseBinaryVector aug = augment_with_label(x, l, q);
            scores[std::size_t(l)] += round.alpha * double(predict(round.weak, aug).sign);
        }
    }
    return prediction_from_scores(scores);
}

std::vector<Prediction> predict_adaboost_prefixes(const AdaBoostMHModel& model,
                                                  const SparseBinaryVector& x) {
    const int q = model.space.size();
    std::vector<Prediction> out;
    out.reserve(model.rounds.size());
    std::vector<double> scores(std::size_t(q), 0.0);
    for (const BoostRound& round : model.rounds) {
        for (int l = 0; l < q; ++l) {
            const SparseBinaryVector aug = augment_with_label(x, l, q);
            scores[std::size_t(l)] += round.alpha * double(predict(round.weak, aug).sign);
        }
        out.push_back(prediction_from_scores(scores));
    }
    return out;
}

// ---- bagging ----

const char* base_kind_name(BaseKind kind) { return kind == BaseKind::br ? "br" : "lp"; }

BaggingModel train_bagging(const MultiLabelDataset& train, BaseKind base_kind,
                           const WeakSpec& weak, const BaggingOptions& options,
                           std::uint64_t seed) {
    if (options.members < 1) throw ConfigError("train_bagging: members must be >= 1");
    if (options.vote_threshold <= 0.0 || options.vote_threshold > 1.0)
        throw ConfigError("train_bagging: vote_threshold must be in (0, 1]");
    weak.validate();

    BaggingModel model;
    model.base_kind = base_kind;
    model.vote_threshold = options.vote_threshold;
    if (base_kind == BaseKind::br)
        model.br_members.resize(std::size_t(options.members));
    else
        model.lp_members.resize(std::size_t(options.members));

    const std::size_t n = train.instances.size();
    parallel::parallel_for(std::size_t(options.members), [&](std::size_t m) {
        MultiLabelDataset sample;
        WeakSpec member_weak = weak;
        if (options.disable_bootstrap) {
            sample = train;
        } else {
            const std::uint64_t member_seed = hash_seed(seed, m);
            Rng rng(member_seed);
            sample.space = train.space;
            sample.dimension = train.dimension;
            sample.instances.reserve(n);
            for (std::size_t k = 0; k < n; ++k)
                sample.instances.push_back(
                    train.instances[std::size_t(rng.next_below(n))]);
            member_weak = weak.with_seed(hash_seed(member_seed, 1));
        }
        if (base_kind == BaseKind::br)
            model.br_members[m] = train_br(sample, member_weak);
        else
            model.lp_members[m] = train_lp(sample, member_weak);
    });
    return model;
}

Prediction predict_bagging(const BaggingModel& model, const SparseBinaryVector& x) {
    const std::size_t m = model.member_count();
    const int q = model.base_kind == BaseKind::br ? model.br_members[0].space.size()
                                                  : model.lp_members[0].space.size();
    std::vector<int> votes(std::size_t(q), 0);
    for (std::size_t k = 0; k < m; ++k) {
        const Prediction p = model.base_kind == BaseKind::br
                                 ? predict_br(model.br_members[k], x)
                                 : predict_lp(model.lp_members[k], x);
        for (int l : p.labels.ids()) votes[std::size_t(l)]++;
    }
    Prediction out;
    out.scores.resize(std::size_t(q));
    for (int l = 0; l < q; ++l) {
        const double fraction = double(votes[std::size_t(l)]) / double(m);
        out.scores[std::size_t(l)] = fraction;
        if (fraction >= model.vote_threshold) out.labels.insert(l);
    }
    return out;
}

std::vector<Prediction> predict_bagging_prefixes(const BaggingModel& model,
                                                 const SparseBinaryVector& x) {
    const std::size_t m = model.member_count();
    const int q = model.base_kind == BaseKind::br ? model.br_members[0].space.size()
                                                  : model.lp_members[0].space.size();
    std::vector<Prediction> out;
    out.reserve(m);
    std::vector<int> votes(std::size_t(q), 0);
    for (std::size_t k = 0; k < m; ++k) {
        const Prediction p = model.base_kind == BaseKind::br
                                 ? predict_br(model.br_members[k], x)
                                 : predict_lp(model.lp_members[k], x);
        for (int l : p.labels.ids()) votes[std::size_t(l)]++;
        Prediction prefix;
        prefix.scores.resize(std::size_t(q));
        for (int l = 0; l < q; ++l) {
            const double fraction = double(votes[std::size_t(l)]) / double(k + 1);
            prefix.scores[std::size_t(l)] = fraction;
            if (fraction >= model.vote_threshold) prefix.labels.insert(l);
        }
        out.push_back(std::move(prefix));
    }
    return out;
}

// ---- dispatch ----

Prediction predict_any(const MultiLabelModel& model, const SparseBinaryVector& x) {
    struct Visitor {
        const SparseBinaryVector& x;
        Prediction operator()(const BRModel& m) const { return predict_br(m, x); }
        Prediction operator()(const LPModel& m) const { return predict_lp(m, x); }
        Prediction operator()(const AdaBoostMHModel& m) const {
            return predict_adaboost_mh(m, x);
        }
        Prediction operator()(const BaggingModel& m) const { return predict_bagging(m, x); }
    };
    return std::visit(Visitor{x}, model);
}

std::vector<Prediction> predict_batch(const MultiLabelModel& model,
                                      const std::vector<SparseBinaryVector>& xs) {
    std::vector<Prediction> out(xs.size());
    parallel::parallel_for(xs.size(), [&](std::size_t i) { out[i] = predict_any(model, xs[i]); });
    return out;
}

std::vector<Prediction> predict_dataset(const MultiLabelModel& model,
                                        const MultiLabelDataset& dataset) {
    std::vector<Prediction> out(dataset.instances.size());
    parallel::parallel_for(dataset.instances.size(), [&](std::size_t i) {
        out[i] = predict_any(model, dataset.instances[i].vector);
    });
    return out;
}

}  // namespace mltc
