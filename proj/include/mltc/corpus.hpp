#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mltc {

// Ordered label universe. Ids are dense 0..Q-1 and, when built from a corpus
// file, assigned lexicographically by name so they are stable across runs
// and row orderings.
struct LabelSpace {
    std::vector<std::string> names;  // index = label id

    int size() const { return (int)names.size(); }
    const std::string& name(int id) const { return names.at((std::size_t)id); }
    // -1 when unknown.
    int id_of(const std::string& name) const;

    static LabelSpace from_names(std::vector<std::string> names);
};

// A set of label ids, kept as a strictly ascending vector.
class LabelSet {
public:
    LabelSet() = default;
    explicit LabelSet(std::vector<int> ids);  // sorts, dedups

    void insert(int id);
    bool contains(int id) const;
    bool empty() const { return ids_.empty(); }
    std::size_t size() const { return ids_.size(); }
    const std::vector<int>& ids() const { return ids_; }

    bool operator==(const LabelSet& o) const { return ids_ == o.ids_; }
    bool operator<(const LabelSet& o) const { return ids_ < o.ids_; }

    std::size_t intersection_size(const LabelSet& o) const;
    std::size_t union_size(const LabelSet& o) const;
    std::size_t symmetric_difference_size(const LabelSet& o) const;

private:
    std::vector<int> ids_;
};

struct Document {
    std::string id;
    std::string text;
    LabelSet labels;
};

struct DocumentCollection {
    std::vector<Document> documents;
    LabelSpace space;
};

// Binary feature vector stored as the strictly ascending indices of the
// features that are present.
struct SparseBinaryVector {
    std::vector<int> indices;
    int dimension = 0;

    bool contains(int feature) const;
    bool operator==(const SparseBinaryVector& o) const {
        return dimension == o.dimension && indices == o.indices;
    }
};

struct MultiLabelInstance {
    SparseBinaryVector vector;
    LabelSet labels;
};

struct MultiLabelDataset {
    LabelSpace space;
    std::vector<MultiLabelInstance> instances;
    int dimension = 0;

    int size() const { return (int)instances.size(); }
    int label_count() const { return space.size(); }
};

// Structural equality: same N, Q, dimension, vectors and label id sets.
// Label names are deliberately not compared; the sparse file format does not
// carry them.
bool structurally_equal(const MultiLabelDataset& a, const MultiLabelDataset& b);

struct DistributionStats {
    std::vector<std::int64_t> per_label_count;
    double mean = 0.0;
    int labels_above_mean = 0;
    std::int64_t max_count = 0;
    std::int64_t min_count = 0;
};

// Knobs for the synthetic imbalanced-corpus generator.
struct ImbalanceProfile {
    // Target number of training documents per label; realized exactly.
    std::vector<std::int64_t> per_label_count;
    // P(label-set size = k) for k = 1..max cardinality; must sum to 1.
    std::vector<double> cardinality_distribution;
    int tokens_per_label = 12;
    double noise_token_rate = 0.1;

    int label_count() const { return (int)per_label_count.size(); }
    void validate() const;  // throws ConfigError

    // Smoothly decaying counts from max_count down to min_count over q labels.
    static ImbalanceProfile geometric(int q, std::int64_t max_count, std::int64_t min_count);
    // Built-in 70-label profile with the hallmark skew of a municipal
    // complaint-routing corpus: 7231 label slots, top label 1304, tail
    // labels with a single instance, mean 103.3.
    static ImbalanceProfile builtin_complaints70();
};

// ---- operations ----

// Corpus CSV: UTF-8, header `id,text,labels`, RFC 4180 quoting, labels field
// is a `|`-separated list of names. Label ids are assigned lexicographically.
DocumentCollection load_documents(const std::string& path);
void save_documents(const DocumentCollection& collection, const std::string& path);

// Deterministic shuffle order shared by every splitter.
std::vector<int> shuffled_order(int n, std::uint64_t seed);

// Deterministic shuffle split: first train_count shuffled instances go to
// train, the rest to test. Both halves share the parent space and dimension.
std::pair<MultiLabelDataset, MultiLabelDataset> split(const MultiLabelDataset& dataset,
                                                      int train_count,
                                                      std::uint64_t seed);

// Same contract at the document level (used before the pipeline is fitted,
// so feature statistics never see the test half).
std::pair<std::vector<Document>, std::vector<Document>> split_documents(
    const std::vector<Document>& documents, int train_count, std::uint64_t seed);

DistributionStats label_distribution(const MultiLabelDataset& dataset);

// Synthetic corpus with exact per-label frequencies. Documents draw a label
// set whose size follows profile.cardinality_distribution (clamped where the
// remaining label budget forces it) and whose members come from a
// frequency-weighted urn holding per_label_count tokens per label. Text is
// 3..8 signature tokens per member label plus shared noise tokens.
DocumentCollection generate_synthetic(const ImbalanceProfile& profile,
                                      int total_instances,
                                      std::uint64_t seed);

// Sparse dataset file: header `<dimension> <Q>`, then one line per instance:
// `<comma-separated label ids or empty>\t<space-separated ascending indices>`.
void save_sparse(const MultiLabelDataset& dataset, const std::string& path);
MultiLabelDataset load_sparse(const std::string& path);

}  // namespace mltc
