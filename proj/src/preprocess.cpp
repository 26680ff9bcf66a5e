#include "mltc/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include "mltc/errors.hpp"
#include "mltc/parallel.hpp"

namespace mltc {

// ---- Vocabulary ----

int Vocabulary::index_of(const std::string& term) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), term);
    if (it != terms.end() && *it == term) return int(it - terms.begin());
    return -1;
}

Vocabulary Vocabulary::from_terms(std::vector<std::string> in) {
    std::sort(in.begin(), in.end());
    in.erase(std::unique(in.begin(), in.end()), in.end());
    Vocabulary v;
    v.terms = std::move(in);
    return v;
}

// ---- config ----

void PipelineConfig::validate() const {
    if (feature_count < 1) throw ConfigError("pipeline: feature_count must be >= 1");
    if (stemmer == StemmerKind::lexicon && !stem_lexicon_path)
        throw ConfigError("pipeline: lexicon stemmer requires a stem lexicon file");
}

// ---- tokenization ----

namespace {

bool is_space_byte(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_punct_byte(unsigned char c) {
    return c < 0x80 && std::ispunct(c);
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text, bool lowercase) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        while (i < n && is_space_byte((unsigned char)text[i])) ++i;
        std::size_t start = i;
        while (i < n && !is_space_byte((unsigned char)text[i])) ++i;
        std::size_t end = i;
        while (start < end && is_punct_byte((unsigned char)text[start])) ++start;
        while (end > start && is_punct_byte((unsigned char)text[end - 1])) --end;
        if (start == end) continue;
        std::string tok = text.substr(start, end - start);
        if (lowercase)
            for (char& c : tok)
                if ((unsigned char)c < 0x80) c = (char)std::tolower((unsigned char)c);
        tokens.push_back(std::move(tok));
    }
    return tokens;
}

std::vector<std::string> normalize_tokens(const std::vector<std::string>& tokens,
                                          const std::map<std::string, std::string>& lexicon) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const std::string& tok : tokens) {
        auto it = lexicon.find(tok);
        out.push_back(it == lexicon.end() ? tok : it->second);
    }
    return out;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const std::set<std::string>& stopwords) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const std::string& tok : tokens)
        if (!stopwords.count(tok)) out.push_back(tok);
    return out;
}

std::vector<std::string> stem_tokens(const std::vector<std::string>& tokens, StemmerKind kind,
                                     const std::map<std::string, std::string>& stem_lexicon) {
    if (kind == StemmerKind::identity) return tokens;
    return normalize_tokens(tokens, stem_lexicon);
}

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& token_lists) {
    std::vector<std::string> all;
    for (const auto& tokens : token_lists)
        for (const auto& tok : tokens) all.push_back(tok);
    return Vocabulary::from_terms(std::move(all));
}

SparseBinaryVector vectorize(const std::vector<std::string>& tokens, const Vocabulary& vocab) {
    SparseBinaryVector v;
    v.dimension = vocab.dimension();
    for (const std::string& tok : tokens) {
        int idx = vocab.index_of(tok);
        if (idx >= 0) v.indices.push_back(idx);
    }
    std::sort(v.indices.begin(), v.indices.end());
    v.indices.erase(std::unique(v.indices.begin(), v.indices.end()), v.indices.end());
    return v;
}

// ---- lexicon files ----

std::set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open stopword file: " + path);
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        // trim
        std::size_t a = 0, b = line.size();
        while (a < b && is_space_byte((unsigned char)line[a])) ++a;
        while (b > a && is_space_byte((unsigned char)line[b - 1])) --b;
        if (a < b) words.insert(line.substr(a, b - a));
    }
    return words;
}

std::map<std::string, std::string> load_lexicon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open lexicon file: " + path);
    std::map<std::string, std::string> lex;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
            throw DataError(path + ":" + std::to_string(line_no) +
                            ": expected 'informal<TAB>formal'");
        lex[line.substr(0, tab)] = line.substr(tab + 1);
    }
    return lex;
}

// ---- information gain ----

namespace {

double entropy2(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// Per-label IG of one feature from integer joint counts.
// n1/n0: instances with/without the feature; pos: instances carrying the
// label; both_pos: instances with both.
double ig_from_counts(std::int64_t n, std::int64_t n1, std::int64_t pos, std::int64_t both_pos) {
    const std::int64_t n0 = n - n1;
    const double h_label = entropy2(double(pos) / double(n));
    double h_given_present = 0.0, h_given_absent = 0.0;
    if (n1 > 0) h_given_present = entropy2(double(both_pos) / double(n1));
    if (n0 > 0) h_given_absent = entropy2(double(pos - both_pos) / double(n0));
    return h_label - (double(n1) / double(n)) * h_given_present -
           (double(n0) / double(n)) * h_given_absent;
}

}  // namespace

std::vector<double> information_gain_all(const MultiLabelDataset& dataset) {
    const int f_count = dataset.dimension;
    const int q = dataset.label_count();
    const auto n = (std::int64_t)dataset.instances.size();
    if (n < 1) throw ConfigError("information gain needs at least one instance");

    // One serial pass gathers all integer joint counts; integer accumulation
    // keeps the result independent of traversal order.
    std::vector<std::int64_t> feature_present(std::size_t(f_count), 0);
    std::vector<std::int64_t> label_present(std::size_t(q), 0);
    std::vector<std::int64_t> joint(std::size_t(f_count) * std::size_t(q), 0);
    for (const auto& inst : dataset.instances) {
        for (int l : inst.labels.ids()) label_present[std::size_t(l)]++;
        for (int f : inst.vector.indices) {
            feature_present[std::size_t(f)]++;
            for (int l : inst.labels.ids())
                joint[std::size_t(f) * std::size_t(q) + std::size_t(l)]++;
        }
    }

    std::vector<double> scores(std::size_t(f_count), 0.0);
    parallel::parallel_for(std::size_t(f_count), [&](std::size_t f) {
        double best = 0.0;
        for (int l = 0; l < q; ++l) {
            double ig = ig_from_counts(n, feature_present[f], label_present[std::size_t(l)],
                                       joint[f * std::size_t(q) + std::size_t(l)]);
            best = std::max(best, ig);
        }
        scores[f] = best;
    });
    return scores;
}

double information_gain(const MultiLabelDataset& dataset, int feature) {
    if (feature < 0 || feature >= dataset.dimension)
        throw ConfigError("information_gain: feature index out of range");
    const int q = dataset.label_count();
    const auto n = (std::int64_t)dataset.instances.size();
    if (n < 1) throw ConfigError("information gain needs at least one instance");

    std::int64_t n1 = 0;
    std::vector<std::int64_t> pos(std::size_t(q), 0), both(std::size_t(q), 0);
    for (const auto& inst : dataset.instances) {
        const bool has = inst.vector.contains(feature);
        if (has) ++n1;
        for (int l : inst.labels.ids()) {
            pos[std::size_t(l)]++;
            if (has) both[std::size_t(l)]++;
        }
    }
    double best = 0.0;
    for (int l = 0; l < q; ++l)
        best = std::max(best, ig_from_counts(n, n1, pos[std::size_t(l)], both[std::size_t(l)]));
    return best;
}

FeatureSelection select_features(const MultiLabelDataset& dataset, int k) {
    if (k < 1 || k > dataset.dimension)
        throw ConfigError("select_features: K must be in [1, dimension]; got " +
                          std::to_string(k) + " with dimension " +
                          std::to_string(dataset.dimension));
    FeatureSelection sel;
    sel.scores = information_gain_all(dataset);
    const std::vector<double>& scores = sel.scores;

    std::vector<int> order(std::size_t(dataset.dimension));
    for (int f = 0; f < dataset.dimension; ++f) order[std::size_t(f)] = f;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (scores[std::size_t(a)] != scores[std::size_t(b)])
            return scores[std::size_t(a)] > scores[std::size_t(b)];
        return a < b;
    });

    sel.selected.assign(order.begin(), order.begin() + k);
    std::sort(sel.selected.begin(), sel.selected.end());
    sel.old_to_new.assign(std::size_t(dataset.dimension), -1);
    for (int i = 0; i < k; ++i) sel.old_to_new[std::size_t(sel.selected[std::size_t(i)])] = i;

    sel.reduced.space = dataset.space;
    sel.reduced.dimension = k;
    sel.reduced.instances.reserve(dataset.instances.size());
    for (const auto& inst : dataset.instances) {
        MultiLabelInstance reduced;
        reduced.labels = inst.labels;
        reduced.vector = apply_selection(inst.vector, sel.old_to_new, k);
        sel.reduced.instances.push_back(std::move(reduced));
    }
    return sel;
}

SparseBinaryVector apply_selection(const SparseBinaryVector& v,
                                   const std::vector<int>& old_to_new, int new_dimension) {
    SparseBinaryVector out;
    out.dimension = new_dimension;
    for (int idx : v.indices) {
        int mapped = old_to_new[std::size_t(idx)];
        if (mapped >= 0) out.indices.push_back(mapped);
    }
    // old_to_new is monotone on the kept features, so order is preserved.
    return out;
}

// ---- TextPipeline ----

std::vector<std::string> TextPipeline::run_token_stages(const std::string& text) const {
    std::vector<std::string> tokens = tokenize(text, lowercase_);
    if (!normalization_.empty()) tokens = normalize_tokens(tokens, normalization_);
    if (!stopwords_.empty()) tokens = remove_stopwords(tokens, stopwords_);
    tokens = stem_tokens(tokens, stemmer_, stem_lexicon_);
    return tokens;
}

TextPipeline TextPipeline::fit(const std::vector<Document>& documents, const LabelSpace& space,
                               const PipelineConfig& config) {
    config.validate();
    TextPipeline p;
    p.lowercase_ = config.lowercase;
    p.stemmer_ = config.stemmer;
    if (config.stopword_path) p.stopwords_ = load_stopwords(*config.stopword_path);
    if (config.normalization_lexicon_path)
        p.normalization_ = load_lexicon(*config.normalization_lexicon_path);
    if (config.stem_lexicon_path) p.stem_lexicon_ = load_lexicon(*config.stem_lexicon_path);

    std::vector<std::vector<std::string>> token_lists(documents.size());
    parallel::parallel_for(documents.size(),
                           [&](std::size_t i) { token_lists[i] = p.run_token_stages(documents[i].text); });

    Vocabulary full = build_vocabulary(token_lists);
    if (config.feature_count > full.dimension())
        throw ConfigError("pipeline: feature_count " + std::to_string(config.feature_count) +
                          " exceeds vocabulary size " + std::to_string(full.dimension()));

    MultiLabelDataset all;
    all.space = space;
    all.dimension = full.dimension();
    all.instances.resize(documents.size());
    parallel::parallel_for(documents.size(), [&](std::size_t i) {
        all.instances[i].vector = vectorize(token_lists[i], full);
        all.instances[i].labels = documents[i].labels;
    });

    FeatureSelection sel = select_features(all, config.feature_count);

    std::vector<std::string> kept;
    kept.reserve(sel.selected.size());
    p.selected_scores_.reserve(sel.selected.size());
    for (int old_idx : sel.selected) {
        kept.push_back(full.terms[std::size_t(old_idx)]);
        p.selected_scores_.push_back(
            {full.terms[std::size_t(old_idx)], sel.scores[std::size_t(old_idx)]});
    }
    // Kept terms are an ascending-index subset of a lexicographic vocabulary,
    // so they are already sorted; the reduced indices line up with them.
    p.features_.terms = std::move(kept);
    p.fitted_ = std::move(sel.reduced);
    return p;
}

SparseBinaryVector TextPipeline::transform(const std::string& text) const {
    return vectorize(run_token_stages(text), features_);
}

MultiLabelDataset TextPipeline::transform_documents(const std::vector<Document>& documents,
                                                    const LabelSpace& space) const {
    MultiLabelDataset out;
    out.space = space;
    out.dimension = features_.dimension();
    out.instances.resize(documents.size());
    parallel::parallel_for(documents.size(), [&](std::size_t i) {
        out.instances[i].vector = transform(documents[i].text);
        out.instances[i].labels = documents[i].labels;
    });
    return out;
}

TextPipeline TextPipeline::from_parts(bool lowercase, StemmerKind stemmer,
                                      std::set<std::string> stopwords,
                                      std::map<std::string, std::string> normalization,
                                      std::map<std::string, std::string> stem_lexicon,
                                      Vocabulary features) {
    TextPipeline p;
    p.lowercase_ = lowercase;
    p.stemmer_ = stemmer;
    p.stopwords_ = std::move(stopwords);
    p.normalization_ = std::move(normalization);
    p.stem_lexicon_ = std::move(stem_lexicon);
    p.features_ = std::move(features);
    return p;
}

}  // namespace mltc
