#include "mltc/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "mltc/errors.hpp"
#include "mltc/rng.hpp"

namespace mltc {

// ---- LabelSpace ----

int LabelSpace::id_of(const std::string& name) const {
    auto it = std::lower_bound(names.begin(), names.end(), name);
    if (it != names.end() && *it == name) return int(it - names.begin());
    // Spaces not built lexicographically (e.g. loaded models) fall back to scan.
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return (int)i;
    return -1;
}

LabelSpace LabelSpace::from_names(std::vector<std::string> names) {
    LabelSpace space;
    space.names = std::move(names);
    return space;
}

// ---- LabelSet ----

LabelSet::LabelSet(std::vector<int> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

void LabelSet::insert(int id) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) ids_.insert(it, id);
}

bool LabelSet::contains(int id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
}

std::size_t LabelSet::intersection_size(const LabelSet& o) const {
    std::size_t n = 0, i = 0, j = 0;
    while (i < ids_.size() && j < o.ids_.size()) {
        if (ids_[i] == o.ids_[j]) {
            ++n, ++i, ++j;
        } else if (ids_[i] < o.ids_[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return n;
}

std::size_t LabelSet::union_size(const LabelSet& o) const {
    return ids_.size() + o.ids_.size() - intersection_size(o);
}

std::size_t LabelSet::symmetric_difference_size(const LabelSet& o) const {
    return ids_.size() + o.ids_.size() - 2 * intersection_size(o);
}

// ---- SparseBinaryVector ----

bool SparseBinaryVector::contains(int feature) const {
    return std::binary_search(indices.begin(), indices.end(), feature);
}

bool structurally_equal(const MultiLabelDataset& a, const MultiLabelDataset& b) {
    if (a.dimension != b.dimension) return false;
    if (a.space.size() != b.space.size()) return false;
    if (a.instances.size() != b.instances.size()) return false;
    for (std::size_t i = 0; i < a.instances.size(); ++i) {
        if (!(a.instances[i].vector == b.instances[i].vector)) return false;
        if (!(a.instances[i].labels == b.instances[i].labels)) return false;
    }
    return true;
}

// ---- CSV ----

namespace {

// RFC 4180 reader. Returns one record per call; tracks physical line numbers
// so parse errors can point at the offending row.
class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    // false at EOF. Quoted fields may contain commas, doubled quotes and
    // newlines.
    bool next_record(std::vector<std::string>& fields, std::size_t& line_out) {
        fields.clear();
        int c = in_.get();
        if (c == EOF) return false;
        line_out = line_;
        std::string field;
        bool quoted = false;
        bool after_quote = false;
        while (true) {
            if (c == EOF) {
                fields.push_back(std::move(field));
                return true;
            }
            char ch = (char)c;
            if (ch == '\n') ++line_;
            if (quoted) {
                if (ch == '"') {
                    int peek = in_.peek();
                    if (peek == '"') {
                        field.push_back('"');
                        in_.get();
                    } else {
                        quoted = false;
                        after_quote = true;
                    }
                } else {
                    field.push_back(ch);
                }
            } else if (ch == '"' && field.empty() && !after_quote) {
                quoted = true;
            } else if (ch == ',') {
                fields.push_back(std::move(field));
                field.clear();
                after_quote = false;
            } else if (ch == '\n') {
                if (!field.empty() && field.back() == '\r') field.pop_back();
                fields.push_back(std::move(field));
                return true;
            } else {
                field.push_back(ch);
            }
            c = in_.get();
        }
    }

private:
    std::istream& in_;
    std::size_t line_ = 1;
};

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += '"';
    return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string label_name_for(int id, int q) {
    int width = 1;
    for (int v = q - 1; v >= 10; v /= 10) ++width;
    std::string digits = std::to_string(id);
    return "L" + std::string(std::size_t(width) - digits.size(), '0') + digits;
}

}  // namespace

DocumentCollection load_documents(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open corpus file: " + path);

    CsvReader reader(in);
    std::vector<std::string> fields;
    std::size_t line = 0;
    if (!reader.next_record(fields, line)) throw DataError(path + ": empty corpus");
    if (fields != std::vector<std::string>{"id", "text", "labels"})
        throw DataError(path + ":1: expected header id,text,labels");

    struct RawDoc {
        std::string id, text;
        std::vector<std::string> labels;
    };
    std::vector<RawDoc> raw;
    std::set<std::string> seen_ids;
    std::set<std::string> label_names;

    while (reader.next_record(fields, line)) {
        if (fields.size() == 1 && fields[0].empty()) continue;  // trailing blank line
        if (fields.size() != 3)
            throw DataError(path + ":" + std::to_string(line) + ": expected 3 columns, got " +
                            std::to_string(fields.size()));
        if (fields[2].empty())
            throw DataError(path + ":" + std::to_string(line) + ": empty label field");
        RawDoc doc;
        doc.id = fields[0];
        doc.text = fields[1];
        for (const std::string& name : split_on(fields[2], '|')) {
            if (name.empty())
                throw DataError(path + ":" + std::to_string(line) + ": empty label name");
            doc.labels.push_back(name);
            label_names.insert(name);
        }
        if (!seen_ids.insert(doc.id).second)
            throw DataError(path + ":" + std::to_string(line) + ": duplicate document id '" +
                            doc.id + "'");
        raw.push_back(std::move(doc));
    }
    if (raw.empty()) throw DataError(path + ": empty corpus");

    DocumentCollection out;
    out.space.names.assign(label_names.begin(), label_names.end());  // lexicographic
    out.documents.reserve(raw.size());
    for (RawDoc& doc : raw) {
        Document d;
        d.id = std::move(doc.id);
        d.text = std::move(doc.text);
        for (const std::string& name : doc.labels) d.labels.insert(out.space.id_of(name));
        out.documents.push_back(std::move(d));
    }
    return out;
}

void save_documents(const DocumentCollection& collection, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write corpus file: " + path);
    out << "id,text,labels\n";
    for (const Document& d : collection.documents) {
        std::string labels;
        for (int id : d.labels.ids()) {
            if (!labels.empty()) labels += '|';
            labels += collection.space.name(id);
        }
        out << csv_quote(d.id) << ',' << csv_quote(d.text) << ',' << csv_quote(labels) << '\n';
    }
    if (!out) throw DataError("write failed: " + path);
}

// ---- split ----

std::vector<int> shuffled_order(int n, std::uint64_t seed) {
    std::vector<int> order(std::size_t(n));
    for (int i = 0; i < n; ++i) order[std::size_t(i)] = i;
    Rng rng(seed);
    rng.shuffle(order);
    return order;
}

std::pair<MultiLabelDataset, MultiLabelDataset> split(const MultiLabelDataset& dataset,
                                                      int train_count,
                                                      std::uint64_t seed) {
    const int n = dataset.size();
    if (train_count <= 0 || train_count >= n)
        throw ConfigError("train_count must be in (0, N); got " + std::to_string(train_count) +
                          " with N=" + std::to_string(n));
    const std::vector<int> order = shuffled_order(n, seed);

    MultiLabelDataset train, test;
    train.space = dataset.space;
    test.space = dataset.space;
    train.dimension = dataset.dimension;
    test.dimension = dataset.dimension;
    train.instances.reserve(std::size_t(train_count));
    test.instances.reserve(std::size_t(n - train_count));
    for (int i = 0; i < n; ++i) {
        auto& dst = i < train_count ? train : test;
        dst.instances.push_back(dataset.instances[std::size_t(order[std::size_t(i)])]);
    }
    return {std::move(train), std::move(test)};
}

std::pair<std::vector<Document>, std::vector<Document>> split_documents(
    const std::vector<Document>& documents, int train_count, std::uint64_t seed) {
    const int n = (int)documents.size();
    if (train_count <= 0 || train_count >= n)
        throw ConfigError("train_count must be in (0, N); got " + std::to_string(train_count) +
                          " with N=" + std::to_string(n));
    const std::vector<int> order = shuffled_order(n, seed);
    std::vector<Document> train, test;
    train.reserve(std::size_t(train_count));
    test.reserve(std::size_t(n - train_count));
    for (int i = 0; i < n; ++i) {
        auto& dst = i < train_count ? train : test;
        dst.push_back(documents[std::size_t(order[std::size_t(i)])]);
    }
    return {std::move(train), std::move(test)};
}

// ---- label distribution ----

DistributionStats label_distribution(const MultiLabelDataset& dataset) {
    const int q = dataset.label_count();
    DistributionStats stats;
    stats.per_label_count.assign(std::size_t(q), 0);
    for (const auto& inst : dataset.instances)
        for (int id : inst.labels.ids()) stats.per_label_count[std::size_t(id)]++;

    std::int64_t total = 0;
    stats.max_count = 0;
    stats.min_count = q > 0 ? stats.per_label_count[0] : 0;
    for (std::int64_t c : stats.per_label_count) {
        total += c;
        stats.max_count = std::max(stats.max_count, c);
        stats.min_count = std::min(stats.min_count, c);
    }
    stats.mean = q > 0 ? double(total) / double(q) : 0.0;
    for (std::int64_t c : stats.per_label_count)
        if (double(c) > stats.mean) stats.labels_above_mean++;
    return stats;
}

// ---- profiles ----

void ImbalanceProfile::validate() const {
    if (per_label_count.empty()) throw ConfigError("profile: per_label_count is empty");
    for (std::int64_t c : per_label_count)
        if (c < 1) throw ConfigError("profile: per-label counts must be >= 1");
    if (cardinality_distribution.empty())
        throw ConfigError("profile: cardinality_distribution is empty");
    double sum = 0.0;
    for (double p : cardinality_distribution) {
        if (p < 0.0) throw ConfigError("profile: negative cardinality probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ConfigError("profile: cardinality probabilities must sum to 1");
    if (tokens_per_label < 1) throw ConfigError("profile: tokens_per_label must be >= 1");
    if (noise_token_rate < 0.0 || noise_token_rate >= 1.0)
        throw ConfigError("profile: noise_token_rate must be in [0, 1)");
}

ImbalanceProfile ImbalanceProfile::geometric(int q, std::int64_t max_count,
                                             std::int64_t min_count) {
    if (q < 1 || min_count < 1 || max_count < min_count)
        throw ConfigError("geometric profile: need q >= 1 and max >= min >= 1");
    ImbalanceProfile p;
    p.per_label_count.resize(std::size_t(q));
    for (int l = 0; l < q; ++l) {
        double t = q == 1 ? 0.0 : double(l) / double(q - 1);
        double v = double(max_count) * std::pow(double(min_count) / double(max_count), t);
        p.per_label_count[std::size_t(l)] = std::max<std::int64_t>(min_count, std::llround(v));
    }
    p.cardinality_distribution = {0.65, 0.30, 0.05};
    return p;
}

ImbalanceProfile ImbalanceProfile::builtin_complaints70() {
    ImbalanceProfile p;
    p.per_label_count = {
        1304, 760, 620, 520, 450, 390, 340, 300, 265, 235,  //
        210,  180, 150, 125, 110, 103, 100, 97,  92,  86,   //
        80,   72,  64,  55,  50,  42,  38,  35,  32,  29,   //
        26,   24,  22,  20,  18,  16,  15,  14,  13,  12,   //
        11,   10,  9,   8,   8,   7,   7,   6,   6,   5,    //
        5,    4,   4,   3,   3,   3,   2,   2,   2,   2,    //
        1,    1,   1,   1,   1,   1,   1,   1,   1,   1};
    p.cardinality_distribution = {0.65, 0.30, 0.05};
    return p;
}

// ---- synthetic generator ----

DocumentCollection generate_synthetic(const ImbalanceProfile& profile, int total_instances,
                                      std::uint64_t seed) {
    profile.validate();
    const int q = profile.label_count();
    if (total_instances < q)
        throw ConfigError("generate_synthetic: total_instances must be >= label count");

    std::vector<std::int64_t> remaining = profile.per_label_count;
    std::int64_t remaining_tokens = 0;
    for (std::int64_t c : remaining) remaining_tokens += c;
    if (remaining_tokens < total_instances)
        throw ConfigError("generate_synthetic: label urn holds " +
                          std::to_string(remaining_tokens) + " slots, fewer than " +
                          std::to_string(total_instances) + " documents");
    for (std::int64_t c : remaining)
        if (c > total_instances)
            throw ConfigError(
                "generate_synthetic: a per-label count exceeds total_instances; a label "
                "cannot appear twice in one document");

    int distinct_remaining = q;
    Rng rng(seed);

    // Cumulative cardinality table, sizes 1..K.
    std::vector<double> card_cdf(profile.cardinality_distribution.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < card_cdf.size(); ++k) {
        acc += profile.cardinality_distribution[k];
        card_cdf[k] = acc;
    }

    const int noise_vocab = 256;
    DocumentCollection out;
    out.space.names.resize(std::size_t(q));
    for (int l = 0; l < q; ++l) out.space.names[std::size_t(l)] = label_name_for(l, q);
    out.documents.reserve(std::size_t(total_instances));

    std::vector<int> members;
    std::vector<std::string> tokens;
    for (int i = 0; i < total_instances; ++i) {
        const std::int64_t docs_after = total_instances - i - 1;

        // Labels whose remaining count equals the number of documents left
        // (including this one) must be in every one of them.
        members.clear();
        for (int l = 0; l < q; ++l)
            if (remaining[std::size_t(l)] == docs_after + 1) members.push_back(l);

        std::int64_t lo = std::max<std::int64_t>(
            {1, (std::int64_t)members.size(), remaining_tokens - docs_after * (std::int64_t)q});
        std::int64_t hi = std::min<std::int64_t>(distinct_remaining, remaining_tokens - docs_after);
        internal_check(lo <= hi, "synthetic generator cardinality window");

        double u = rng.next_unit();
        std::int64_t want = (std::int64_t)card_cdf.size();
        for (std::size_t k = 0; k < card_cdf.size(); ++k) {
            if (u < card_cdf[k]) {
                want = (std::int64_t)k + 1;
                break;
            }
        }
        const std::int64_t cardinality = std::clamp(want, lo, hi);

        // Fill the rest of the set from the frequency-weighted urn.
        while ((std::int64_t)members.size() < cardinality) {
            std::int64_t pool = 0;
            for (int l = 0; l < q; ++l)
                if (remaining[std::size_t(l)] > 0 &&
                    !std::binary_search(members.begin(), members.end(), l))
                    pool += remaining[std::size_t(l)];
            internal_check(pool > 0, "synthetic generator urn pool");
            std::int64_t pick = (std::int64_t)rng.next_below((std::uint64_t)pool);
            int chosen = -1;
            for (int l = 0; l < q; ++l) {
                if (remaining[std::size_t(l)] == 0 ||
                    std::binary_search(members.begin(), members.end(), l))
                    continue;
                pick -= remaining[std::size_t(l)];
                if (pick < 0) {
                    chosen = l;
                    break;
                }
            }
            internal_check(chosen >= 0, "synthetic generator urn draw");
            members.insert(std::lower_bound(members.begin(), members.end(), chosen), chosen);
        }

        for (int l : members) {
            remaining[std::size_t(l)]--;
            if (remaining[std::size_t(l)] == 0) distinct_remaining--;
        }
        remaining_tokens -= cardinality;

        // Signature tokens for every member label, then shared noise.
        tokens.clear();
        for (int l : members) {
            int k = rng.next_range(3, 8);
            for (int t = 0; t < k; ++t) {
                int slot = rng.next_range(0, profile.tokens_per_label - 1);
                tokens.push_back("k" + std::to_string(l) + "w" + std::to_string(slot));
            }
        }
        const double rate = profile.noise_token_rate;
        if (rate > 0.0) {
            auto noise_count =
                (std::int64_t)std::llround(double(tokens.size()) * rate / (1.0 - rate));
            for (std::int64_t t = 0; t < noise_count; ++t)
                tokens.push_back("zz" + std::to_string(rng.next_range(0, noise_vocab - 1)));
        }
        rng.shuffle(tokens);

        Document doc;
        doc.id = "d" + std::to_string(i + 1);
        doc.labels = LabelSet(members);
        for (std::size_t t = 0; t < tokens.size(); ++t) {
            if (t) doc.text += ' ';
            doc.text += tokens[t];
        }
        out.documents.push_back(std::move(doc));
    }

    internal_check(remaining_tokens == 0, "synthetic generator left unplaced label slots");
    return out;
}

// ---- sparse file format ----

void save_sparse(const MultiLabelDataset& dataset, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write sparse dataset: " + path);
    out << dataset.dimension << ' ' << dataset.label_count() << '\n';
    for (const auto& inst : dataset.instances) {
        bool first = true;
        for (int id : inst.labels.ids()) {
            if (!first) out << ',';
            out << id;
            first = false;
        }
        out << '\t';
        first = true;
        for (int idx : inst.vector.indices) {
            if (!first) out << ' ';
            out << idx;
            first = false;
        }
        out << '\n';
    }
    if (!out) throw DataError("write failed: " + path);
}

namespace {

int parse_int(const std::string& tok, const std::string& path, std::size_t line) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw DataError(path + ":" + std::to_string(line) + ": bad integer '" + tok + "'");
    }
}

}  // namespace

MultiLabelDataset load_sparse(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open sparse dataset: " + path);

    std::string header;
    if (!std::getline(in, header)) throw DataError(path + ": empty file");
    std::istringstream hs(header);
    int dimension = 0, q = 0;
    if (!(hs >> dimension >> q) || dimension < 0 || q < 1)
        throw DataError(path + ":1: bad header, expected '<dimension> <Q>'");

    MultiLabelDataset dataset;
    dataset.dimension = dimension;
    dataset.space.names.resize(std::size_t(q));
    for (int l = 0; l < q; ++l) dataset.space.names[std::size_t(l)] = label_name_for(l, q);

    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw DataError(path + ":" + std::to_string(line_no) + ": missing tab separator");

        MultiLabelInstance inst;
        inst.vector.dimension = dimension;
        const std::string label_part = line.substr(0, tab);
        if (!label_part.empty()) {
            std::vector<int> ids;
            for (const std::string& tok : split_on(label_part, ','))
                ids.push_back(parse_int(tok, path, line_no));
            for (int id : ids)
                if (id < 0 || id >= q)
                    throw DataError(path + ":" + std::to_string(line_no) + ": label id " +
                                    std::to_string(id) + " out of range");
            inst.labels = LabelSet(std::move(ids));
        }
        const std::string index_part = line.substr(tab + 1);
        if (!index_part.empty()) {
            int prev = -1;
            for (const std::string& tok : split_on(index_part, ' ')) {
                int idx = parse_int(tok, path, line_no);
                if (idx <= prev)
                    throw DataError(path + ":" + std::to_string(line_no) +
                                    ": indices not ascending");
                if (idx >= dimension)
                    throw DataError(path + ":" + std::to_string(line_no) + ": index " +
                                    std::to_string(idx) + " out of range for dimension " +
                                    std::to_string(dimension));
                inst.vector.indices.push_back(idx);
                prev = idx;
            }
        }
        dataset.instances.push_back(std::move(inst));
    }
    return dataset;
}

}  // namespace mltc
