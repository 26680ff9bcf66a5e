#include <fstream>
#include <json.hpp>

#include "mltc/errors.hpp"
#include "mltc/harness.hpp"

namespace mltc {

using nlohmann::json;

namespace {

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

// ---- binary models ----

json tree_to_json(const TreeModel& m) {
    json nodes = json::array();
    for (const TreeNode& n : m.nodes)
        nodes.push_back({n.feature, n.absent, n.present, n.leaf_class});
    return json{{"n_classes", m.n_classes}, {"nodes", std::move(nodes)}};
}

TreeModel tree_from_json(const json& j) {
    TreeModel m;
    m.n_classes = j.at("n_classes").get<int>();
    for (const json& n : j.at("nodes")) {
        TreeNode node;
        node.feature = n.at(0).get<int>();
        node.absent = n.at(1).get<int>();
        node.present = n.at(2).get<int>();
        node.leaf_class = n.at(3).get<int>();
        m.nodes.push_back(node);
    }
    if (m.nodes.empty()) throw DataError("model file: empty tree");
    return m;
}

json binary_to_json(const BinaryModel& model) {
    json j;
    j["dimension"] = model.dimension;
    struct Visitor {
        json& j;
        void operator()(const ConstantModel& m) const {
            j["type"] = "constant";
            j["sign"] = m.sign;
        }
        void operator()(const StumpModel& m) const {
            j["type"] = "stump";
            j["feature"] = m.feature;
            j["sign_present"] = m.sign_present;
            j["sign_absent"] = m.sign_absent;
        }
        void operator()(const TreeModel& m) const {
            j["type"] = "tree";
            j["tree"] = tree_to_json(m);
        }
        void operator()(const ForestModel& m) const {
            j["type"] = "forest";
            j["n_classes"] = m.n_classes;
            json trees = json::array();
            for (const TreeModel& t : m.trees) trees.push_back(tree_to_json(t));
            j["trees"] = std::move(trees);
        }
        void operator()(const NaiveBayesModel& m) const {
            j["type"] = "nb";
            j["n_classes"] = m.n_classes;
            j["base"] = m.base;
            j["delta"] = m.delta;
        }
        void operator()(const SmoModel& m) const {
            j["type"] = "smo";
            j["alpha"] = m.alpha;
            j["w"] = m.weight_vector;
            j["bias"] = m.bias;
        }
    };
    std::visit(Visitor{j}, model.impl);
    return j;
}

BinaryModel binary_from_json(const json& j) {
    BinaryModel model;
    model.dimension = j.at("dimension").get<int>();
    const std::string type = j.at("type").get<std::string>();
    if (type == "constant") {
        model.impl = ConstantModel{j.at("sign").get<int>()};
    } else if (type == "stump") {
        model.impl = StumpModel{j.at("feature").get<int>(), j.at("sign_present").get<int>(),
                                j.at("sign_absent").get<int>()};
    } else if (type == "tree") {
        model.impl = tree_from_json(j.at("tree"));
    } else if (type == "forest") {
        ForestModel m;
        m.n_classes = j.at("n_classes").get<int>();
        for (const json& t : j.at("trees")) m.trees.push_back(tree_from_json(t));
        model.impl = std::move(m);
    } else if (type == "nb") {
        NaiveBayesModel m;
        m.n_classes = j.at("n_classes").get<int>();
        m.base = j.at("base").get<std::vector<double>>();
        m.delta = j.at("delta").get<std::vector<std::vector<double>>>();
        model.impl = std::move(m);
    } else if (type == "smo") {
        SmoModel m;
        m.alpha = j.at("alpha").get<std::vector<double>>();
        m.weight_vector = j.at("w").get<std::vector<double>>();
        m.bias = j.at("bias").get<double>();
        model.impl = std::move(m);
    } else {
        throw DataError("model file: unknown binary model type '" + type + "'");
    }
    return model;
}

// ---- multi-label models ----

json br_to_json(const BRModel& m) {
    json models = json::array();
    for (const BinaryModel& b : m.per_label) models.push_back(binary_to_json(b));
    return json{{"kind", "br"}, {"dimension", m.dimension}, {"per_label", std::move(models)}};
}

BRModel br_from_json(const json& j, const LabelSpace& space) {
    BRModel m;
    m.space = space;
    m.dimension = j.at("dimension").get<int>();
    for (const json& b : j.at("per_label")) m.per_label.push_back(binary_from_json(b));
    if ((int)m.per_label.size() != space.size())
        throw DataError("model file: BR model count does not match label space");
    return m;
}

json lp_to_json(const LPModel& m) {
    json codebook = json::array();
    for (const LabelSet& set : m.codebook) codebook.push_back(set.ids());
    json j{{"kind", "lp"},
           {"dimension", m.dimension},
           {"codebook", std::move(codebook)},
           {"priors", m.priors},
           {"weak_kind", weak_kind_name(m.weak_kind)}};
    struct Visitor {
        json& j;
        void operator()(const TreeModel& m) const {
            j["predictor"] = json{{"type", "tree"}, {"tree", tree_to_json(m)}};
        }
        void operator()(const ForestModel& m) const {
            json trees = json::array();
            for (const TreeModel& t : m.trees) trees.push_back(tree_to_json(t));
            j["predictor"] =
                json{{"type", "forest"}, {"n_classes", m.n_classes}, {"trees", std::move(trees)}};
        }
        void operator()(const NaiveBayesModel& m) const {
            j["predictor"] = json{
                {"type", "nb"}, {"n_classes", m.n_classes}, {"base", m.base}, {"delta", m.delta}};
        }
        void operator()(const OvrBattery& m) const {
            json models = json::array();
            for (const BinaryModel& b : m.per_class) models.push_back(binary_to_json(b));
            j["predictor"] = json{{"type", "ovr"}, {"models", std::move(models)}};
        }
    };
    std::visit(Visitor{j}, m.predictor);
    return j;
}

LPModel lp_from_json(const json& j, const LabelSpace& space) {
    LPModel m;
    m.space = space;
    m.dimension = j.at("dimension").get<int>();
    for (const json& ids : j.at("codebook")) m.codebook.emplace_back(ids.get<std::vector<int>>());
    m.priors = j.at("priors").get<std::vector<double>>();
    m.weak_kind = weak_kind_from_name(j.at("weak_kind").get<std::string>());
    const json& pred = j.at("predictor");
    const std::string type = pred.at("type").get<std::string>();
    if (type == "tree") {
        m.predictor = tree_from_json(pred.at("tree"));
    } else if (type == "forest") {
        ForestModel f;
        f.n_classes = pred.at("n_classes").get<int>();
        for (const json& t : pred.at("trees")) f.trees.push_back(tree_from_json(t));
        m.predictor = std::move(f);
    } else if (type == "nb") {
        NaiveBayesModel nb;
        nb.n_classes = pred.at("n_classes").get<int>();
        nb.base = pred.at("base").get<std::vector<double>>();
        nb.delta = pred.at("delta").get<std::vector<std::vector<double>>>();
        m.predictor = std::move(nb);
    } else if (type == "ovr") {
        OvrBattery battery;
        for (const json& b : pred.at("models")) battery.per_class.push_back(binary_from_json(b));
        m.predictor = std::move(battery);
    } else {
        throw DataError("model file: unknown LP predictor type '" + type + "'");
    }
    if (m.codebook.size() != m.priors.size())
        throw DataError("model file: LP codebook and priors disagree");
    return m;
}

json multilabel_to_json(const MultiLabelModel& model) {
    struct Visitor {
        json operator()(const BRModel& m) const { return br_to_json(m); }
        json operator()(const LPModel& m) const { return lp_to_json(m); }
        json operator()(const AdaBoostMHModel& m) const {
            json rounds = json::array();
            for (const BoostRound& r : m.rounds)
                rounds.push_back({{"epsilon", r.epsilon},
                                  {"alpha", r.alpha},
                                  {"z", r.z},
                                  {"weak", binary_to_json(r.weak)}});
            return json{{"kind", "adaboost_mh"},
                        {"feature_dimension", m.feature_dimension},
                        {"rounds", std::move(rounds)}};
        }
        json operator()(const BaggingModel& m) const {
            json members = json::array();
            if (m.base_kind == BaseKind::br)
                for (const BRModel& member : m.br_members) members.push_back(br_to_json(member));
            else
                for (const LPModel& member : m.lp_members) members.push_back(lp_to_json(member));
            return json{{"kind", "bagging"},
                        {"base_kind", base_kind_name(m.base_kind)},
                        {"vote_threshold", m.vote_threshold},
                        {"members", std::move(members)}};
        }
    };
    return std::visit(Visitor{}, model);
}

MultiLabelModel multilabel_from_json(const json& j, const LabelSpace& space) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "br") return br_from_json(j, space);
    if (kind == "lp") return lp_from_json(j, space);
    if (kind == "adaboost_mh") {
        AdaBoostMHModel m;
        m.space = space;
        m.feature_dimension = j.at("feature_dimension").get<int>();
        for (const json& r : j.at("rounds")) {
            BoostRound round;
            round.epsilon = r.at("epsilon").get<double>();
            round.alpha = r.at("alpha").get<double>();
            round.z = r.at("z").get<double>();
            round.weak = binary_from_json(r.at("weak"));
            m.rounds.push_back(std::move(round));
        }
        if (m.rounds.empty()) throw DataError("model file: boosting model without rounds");
        return m;
    }
    if (kind == "bagging") {
        BaggingModel m;
        const std::string base = j.at("base_kind").get<std::string>();
        if (base != "br" && base != "lp")
            throw DataError("model file: unknown bagging base kind '" + base + "'");
        m.base_kind = base == "br" ? BaseKind::br : BaseKind::lp;
        m.vote_threshold = j.at("vote_threshold").get<double>();
        for (const json& member : j.at("members")) {
            if (m.base_kind == BaseKind::br)
                m.br_members.push_back(br_from_json(member, space));
            else
                m.lp_members.push_back(lp_from_json(member, space));
        }
        if (m.member_count() == 0) throw DataError("model file: bagging model without members");
        return m;
    }
    throw DataError("model file: unknown model kind '" + kind + "'");
}

// ---- pipeline ----

json pipeline_to_json(const TextPipeline& p) {
    json norm = json::array();
    for (const auto& [k, v] : p.normalization()) norm.push_back({k, v});
    json stem = json::array();
    for (const auto& [k, v] : p.stem_lexicon()) stem.push_back({k, v});
    json stopwords = json::array();
    for (const std::string& w : p.stopwords()) stopwords.push_back(w);

    json j;
    j["lowercase"] = p.lowercase();
    j["stemmer"] = p.stemmer() == StemmerKind::identity ? "identity" : "lexicon";
    j["stopwords"] = std::move(stopwords);
    j["normalization"] = std::move(norm);
    j["stem_lexicon"] = std::move(stem);
    j["features"] = p.features().terms;
    // Quick content fingerprints for the embedded lexicons.
    j["lexicon_checksums"] = {{"stopwords", fnv1a64_hex(j["stopwords"].dump())},
                              {"normalization", fnv1a64_hex(j["normalization"].dump())},
                              {"stem_lexicon", fnv1a64_hex(j["stem_lexicon"].dump())}};
    return j;
}

TextPipeline pipeline_from_json(const json& j) {
    std::set<std::string> stopwords;
    for (const json& w : j.at("stopwords")) stopwords.insert(w.get<std::string>());
    std::map<std::string, std::string> norm, stem;
    for (const json& pair : j.at("normalization"))
        norm[pair.at(0).get<std::string>()] = pair.at(1).get<std::string>();
    for (const json& pair : j.at("stem_lexicon"))
        stem[pair.at(0).get<std::string>()] = pair.at(1).get<std::string>();

    Vocabulary features;
    features.terms = j.at("features").get<std::vector<std::string>>();
    for (std::size_t i = 1; i < features.terms.size(); ++i)
        if (!(features.terms[i - 1] < features.terms[i]))
            throw DataError("model file: vocabulary terms not strictly ascending");

    const std::string stemmer = j.at("stemmer").get<std::string>();
    if (stemmer != "identity" && stemmer != "lexicon")
        throw DataError("model file: unknown stemmer '" + stemmer + "'");
    return TextPipeline::from_parts(
        j.at("lowercase").get<bool>(),
        stemmer == "identity" ? StemmerKind::identity : StemmerKind::lexicon,
        std::move(stopwords), std::move(norm), std::move(stem), std::move(features));
}

}  // namespace

void save_model(const TrainedModel& model, const std::string& path) {
    json payload;
    payload["algorithm"] = algorithm_name(model.algorithm);
    payload["weak"] = weak_kind_name(model.weak);
    payload["labels"] = model.space.names;
    payload["pipeline"] = pipeline_to_json(model.pipeline);
    payload["model"] = multilabel_to_json(model.model);

    json root;
    root["format_version"] = kModelFormatVersion;
    root["checksum"] = fnv1a64_hex(payload.dump());
    root["payload"] = std::move(payload);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model file: " + path);
    out << root.dump(1) << '\n';
    if (!out) throw DataError("write failed: " + path);
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file: " + path);
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        throw DataError("model file " + path + " is corrupt: " + e.what());
    }
    try {
        if (!root.contains("format_version"))
            throw DataError("model file " + path + " has no format_version");
        const int version = root.at("format_version").get<int>();
        if (version != kModelFormatVersion)
            throw DataError("model file " + path + " has format_version " +
                            std::to_string(version) + ", expected " +
                            std::to_string(kModelFormatVersion));
        const json& payload = root.at("payload");
        if (root.at("checksum").get<std::string>() != fnv1a64_hex(payload.dump()))
            throw DataError("model file " + path + " failed its checksum");

        TrainedModel model;
        model.algorithm = algorithm_from_name(payload.at("algorithm").get<std::string>());
        model.weak = weak_kind_from_name(payload.at("weak").get<std::string>());
        model.space = LabelSpace::from_names(payload.at("labels").get<std::vector<std::string>>());
        model.pipeline = pipeline_from_json(payload.at("pipeline"));
        model.model = multilabel_from_json(payload.at("model"), model.space);
        return model;
    } catch (const json::exception& e) {
        throw DataError("model file " + path + " is malformed: " + e.what());
    } catch (const ConfigError& e) {
        throw DataError("model file " + path + " is malformed: " + e.what());
    }
}

}  // namespace mltc
