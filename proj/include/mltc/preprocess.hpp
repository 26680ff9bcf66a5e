#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mltc/corpus.hpp"

namespace mltc {

// Term -> feature index map. Indices are assigned lexicographically so the
// mapping only depends on the term set, never on document order.
struct Vocabulary {
    std::vector<std::string> terms;  // index = feature id, lexicographic
    int dimension() const { return (int)terms.size(); }
    // -1 when out of vocabulary.
    int index_of(const std::string& term) const;

    static Vocabulary from_terms(std::vector<std::string> terms);  // sorts, dedups
};

enum class StemmerKind { identity, lexicon };

struct PipelineConfig {
    std::optional<std::string> stopword_path;
    std::optional<std::string> normalization_lexicon_path;
    std::optional<std::string> stem_lexicon_path;
    StemmerKind stemmer = StemmerKind::identity;
    int feature_count = 753;
    bool lowercase = true;

    void validate() const;  // throws ConfigError
};

struct TermScore {
    std::string term;
    double ig = 0.0;  // bits
};

// ---- token-level operations ----

// Whitespace split, leading/trailing punctuation stripped per token, empties
// dropped, optional ASCII lowercasing. Non-ASCII bytes pass through.
std::vector<std::string> tokenize(const std::string& text, bool lowercase);

// Single-pass replacement; outputs are never re-normalized.
std::vector<std::string> normalize_tokens(const std::vector<std::string>& tokens,
                                          const std::map<std::string, std::string>& lexicon);

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const std::set<std::string>& stopwords);

std::vector<std::string> stem_tokens(const std::vector<std::string>& tokens, StemmerKind kind,
                                     const std::map<std::string, std::string>& stem_lexicon);

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& token_lists);

// Presence semantics: index set of vocabulary terms occurring at least once.
SparseBinaryVector vectorize(const std::vector<std::string>& tokens, const Vocabulary& vocab);

// ---- lexicon files ----

// One token per line; '#' starts a comment.
std::set<std::string> load_stopwords(const std::string& path);
// `informal<TAB>formal` per line.
std::map<std::string, std::string> load_lexicon(const std::string& path);

// ---- information gain ----

// Max over labels of the entropy reduction H(Y_l) - P(f)H(Y_l|f) - P(!f)H(Y_l|!f),
// log base 2, 0*log0 = 0. In [0, 1] for binary features and per-label targets.
double information_gain(const MultiLabelDataset& dataset, int feature);

// Scores for every feature at once. This is the parallel kernel behind
// select_features: joint counts are gathered in one serial integer pass, the
// per-feature entropy arithmetic fans out across features.
std::vector<double> information_gain_all(const MultiLabelDataset& dataset);

struct FeatureSelection {
    std::vector<int> selected;          // original indices, ascending
    std::vector<int> old_to_new;        // dimension-sized, -1 for dropped features
    std::vector<double> scores;         // IG per original feature
    MultiLabelDataset reduced;          // dimension = K
};

// Top-K features by information gain, ties broken by ascending original
// index. Reduced vectors keep their relative index order.
FeatureSelection select_features(const MultiLabelDataset& dataset, int k);

// Remap one vector through a selection (for transforming held-out data).
SparseBinaryVector apply_selection(const SparseBinaryVector& v,
                                   const std::vector<int>& old_to_new, int new_dimension);

// ---- the fitted pipeline ----

// Everything needed to turn raw text into a model-ready vector. Fit on the
// training split only; statistics never leak from held-out data.
class TextPipeline {
public:
    // Fits tokenization, vocabulary and feature selection on the given
    // documents. K is clamped at the full vocabulary size only through
    // config.validate(); a K larger than the vocabulary is a ConfigError.
    static TextPipeline fit(const std::vector<Document>& documents, const LabelSpace& space,
                            const PipelineConfig& config);

    SparseBinaryVector transform(const std::string& text) const;
    MultiLabelDataset transform_documents(const std::vector<Document>& documents,
                                          const LabelSpace& space) const;

    // Vectors produced while fitting (the reduced training dataset).
    const MultiLabelDataset& fitted_training_data() const { return fitted_; }
    const Vocabulary& features() const { return features_; }
    const std::vector<TermScore>& selected_scores() const { return selected_scores_; }

    // Serialization hooks (model files are self-contained).
    bool lowercase() const { return lowercase_; }
    StemmerKind stemmer() const { return stemmer_; }
    const std::set<std::string>& stopwords() const { return stopwords_; }
    const std::map<std::string, std::string>& normalization() const { return normalization_; }
    const std::map<std::string, std::string>& stem_lexicon() const { return stem_lexicon_; }

    static TextPipeline from_parts(bool lowercase, StemmerKind stemmer,
                                   std::set<std::string> stopwords,
                                   std::map<std::string, std::string> normalization,
                                   std::map<std::string, std::string> stem_lexicon,
                                   Vocabulary features);

private:
    TextPipeline() = default;

    std::vector<std::string> run_token_stages(const std::string& text) const;

    bool lowercase_ = true;
    StemmerKind stemmer_ = StemmerKind::identity;
    std::set<std::string> stopwords_;
    std::map<std::string, std::string> normalization_;
    std::map<std::string, std::string> stem_lexicon_;
    Vocabulary features_;  // selected terms only
    std::vector<TermScore> selected_scores_;
    MultiLabelDataset fitted_;
};

}  // namespace mltc
