#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "mltc/errors.hpp"
#include "mltc/harness.hpp"
#include "mltc/parallel.hpp"
#include "mltc/rng.hpp"

namespace mltc {

// ---- enum names ----

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::br: return "br";
        case Algorithm::lp: return "lp";
        case Algorithm::adaboost_mh: return "adaboost_mh";
        case Algorithm::bagging_br: return "bagging_br";
        case Algorithm::bagging_lp: return "bagging_lp";
    }
    return "?";
}

Algorithm algorithm_from_name(const std::string& name) {
    std::string canon = name;
    std::replace(canon.begin(), canon.end(), '-', '_');
    for (Algorithm a : kAllAlgorithms)
        if (canon == algorithm_name(a)) return a;
    throw ConfigError("unknown algorithm '" + name + "'");
}

const char* metric_name(MetricKind m) {
    switch (m) {
        case MetricKind::hamming_loss: return "hamming_loss";
        case MetricKind::subset_accuracy: return "subset_accuracy";
        case MetricKind::example_accuracy: return "example_accuracy";
        case MetricKind::micro_f1: return "micro_f1";
    }
    return "?";
}

bool metric_lower_is_better(MetricKind m) { return m == MetricKind::hamming_loss; }

double metric_value(const EvaluationReport& report, MetricKind m) {
    switch (m) {
        case MetricKind::hamming_loss: return report.hamming_loss;
        case MetricKind::subset_accuracy: return report.subset_accuracy;
        case MetricKind::example_accuracy: return report.example_accuracy;
        case MetricKind::micro_f1: return report.micro_f1;
    }
    return 0.0;
}

// ---- config ----

void ExperimentConfig::validate() const {
    if (corpus_path.has_value() == synthetic.has_value())
        throw ConfigError("experiment: configure exactly one corpus source");
    if (synthetic) {
        synthetic->profile.validate();
        if (synthetic->total_instances < synthetic->profile.label_count())
            throw ConfigError("experiment: synthetic corpus smaller than its label count");
    }
    pipeline.validate();
    if (train_count < 1) throw ConfigError("experiment: train_count must be >= 1");
    if (algorithms.empty()) throw ConfigError("experiment: algorithm set is empty");
    if (weak_kinds.empty()) throw ConfigError("experiment: weak learner set is empty");
    if (iterations < 1) throw ConfigError("experiment: iterations must be >= 1");
    if (report_format != "text" && report_format != "csv" && report_format != "jsonl")
        throw ConfigError("experiment: report format must be text, csv or jsonl");
}

namespace {

struct IniFile {
    // section -> ordered (key, value) pairs
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>
        sections;
};

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace((unsigned char)s[a])) ++a;
    while (b > a && std::isspace((unsigned char)s[b - 1])) --b;
    return s.substr(a, b - a);
}

IniFile parse_ini(const std::string& text, const std::string& origin) {
    IniFile ini;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::string current;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(line_no) + ": bad section header");
            current = trim(line.substr(1, line.size() - 2));
            ini.sections.push_back({current, {}});
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected key = value");
        if (current.empty())
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": key outside a section");
        ini.sections.back().second.push_back({trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
    }
    return ini;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : value) {
        if (c == ',') {
            if (!trim(cur).empty()) out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

std::int64_t parse_i64(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        const std::int64_t v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer for '" + key + "': " + value);
    }
}

double parse_real(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad number for '" + key + "': " + value);
    }
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config: bad boolean for '" + key + "': " + value);
}

// "1:0.65,2:0.3,3:0.05" -> probabilities for sizes 1..max
std::vector<double> parse_cardinality(const std::string& value) {
    std::vector<std::pair<int, double>> entries;
    int max_size = 0;
    for (const std::string& part : split_list(value)) {
        auto colon = part.find(':');
        if (colon == std::string::npos)
            throw ConfigError("config: cardinality entries look like size:probability");
        const int size = (int)parse_i64(trim(part.substr(0, colon)), "cardinality size");
        const double p = parse_real(trim(part.substr(colon + 1)), "cardinality probability");
        if (size < 1) throw ConfigError("config: cardinality sizes start at 1");
        entries.push_back({size, p});
        max_size = std::max(max_size, size);
    }
    if (entries.empty()) throw ConfigError("config: empty cardinality distribution");
    std::vector<double> dist(std::size_t(max_size), 0.0);
    for (const auto& [size, p] : entries) dist[std::size_t(size - 1)] = p;
    return dist;
}

}  // namespace

ExperimentConfig parse_experiment_config_text(const std::string& text,
                                              const std::string& origin) {
    const IniFile ini = parse_ini(text, origin);
    ExperimentConfig config;

    // Synthetic corpus settings are gathered first, then assembled.
    bool want_synthetic = false;
    std::optional<std::string> builtin_profile;
    std::vector<std::int64_t> counts;
    std::int64_t syn_labels = 0, syn_instances = 0, syn_max = 0, syn_min = 1;
    std::vector<double> cardinality = {0.65, 0.30, 0.05};
    int tokens_per_label = 12;
    double noise_rate = 0.1;
    std::uint64_t syn_seed = 1;

    for (const auto& [section, entries] : ini.sections) {
        for (const auto& [key, value] : entries) {
            if (section == "corpus") {
                if (key == "csv") {
                    config.corpus_path = value;
                } else if (key == "synthetic_profile") {
                    want_synthetic = true;
                    builtin_profile = value;
                } else if (key == "synthetic_labels") {
                    want_synthetic = true;
                    syn_labels = parse_i64(value, key);
                } else if (key == "synthetic_instances") {
                    want_synthetic = true;
                    syn_instances = parse_i64(value, key);
                } else if (key == "synthetic_counts") {
                    want_synthetic = true;
                    for (const std::string& c : split_list(value))
                        counts.push_back(parse_i64(c, key));
                } else if (key == "synthetic_max_count") {
                    want_synthetic = true;
                    syn_max = parse_i64(value, key);
                } else if (key == "synthetic_min_count") {
                    want_synthetic = true;
                    syn_min = parse_i64(value, key);
                } else if (key == "synthetic_cardinality") {
                    cardinality = parse_cardinality(value);
                } else if (key == "synthetic_tokens_per_label") {
                    tokens_per_label = (int)parse_i64(value, key);
                } else if (key == "synthetic_noise_rate") {
                    noise_rate = parse_real(value, key);
                } else if (key == "synthetic_seed") {
                    syn_seed = (std::uint64_t)parse_i64(value, key);
                } else {
                    throw ConfigError(origin + ": unknown key '" + key + "' in [corpus]");
                }
            } else if (section == "pipeline") {
                if (key == "features") config.pipeline.feature_count = (int)parse_i64(value, key);
                else if (key == "lowercase") config.pipeline.lowercase = parse_bool(value, key);
                else if (key == "stopwords") config.pipeline.stopword_path = value;
                else if (key == "normalization_lexicon")
                    config.pipeline.normalization_lexicon_path = value;
                else if (key == "stem_lexicon") config.pipeline.stem_lexicon_path = value;
                else if (key == "stemmer") {
                    if (value == "identity") config.pipeline.stemmer = StemmerKind::identity;
                    else if (value == "lexicon") config.pipeline.stemmer = StemmerKind::lexicon;
                    else throw ConfigError(origin + ": stemmer must be identity or lexicon");
                } else {
                    throw ConfigError(origin + ": unknown key '" + key + "' in [pipeline]");
                }
            } else if (section == "split") {
                if (key == "train_count") config.train_count = (int)parse_i64(value, key);
                else if (key == "seed") config.split_seed = (std::uint64_t)parse_i64(value, key);
                else throw ConfigError(origin + ": unknown key '" + key + "' in [split]");
            } else if (section == "experiment") {
                if (key == "algorithms") {
                    for (const std::string& name : split_list(value))
                        config.algorithms.push_back(algorithm_from_name(name));
                } else if (key == "weak") {
                    for (const std::string& name : split_list(value))
                        config.weak_kinds.push_back(weak_kind_from_name(name));
                } else if (key == "iterations") {
                    config.iterations = (int)parse_i64(value, key);
                } else if (key == "seed") {
                    config.master_seed = (std::uint64_t)parse_i64(value, key);
                } else if (key == "report") {
                    config.report_format = value;
                } else {
                    throw ConfigError(origin + ": unknown key '" + key + "' in [experiment]");
                }
            } else {
                throw ConfigError(origin + ": unknown section [" + section + "]");
            }
        }
    }

    if (want_synthetic) {
        SyntheticSpec spec;
        if (builtin_profile) {
            if (*builtin_profile != "complaints70")
                throw ConfigError(origin + ": unknown synthetic_profile '" + *builtin_profile +
                                  "'");
            spec.profile = ImbalanceProfile::builtin_complaints70();
            if (syn_instances == 0) syn_instances = 5151;
        } else if (!counts.empty()) {
            spec.profile.per_label_count = counts;
            if (syn_labels != 0 && syn_labels != (std::int64_t)counts.size())
                throw ConfigError(origin + ": synthetic_labels disagrees with synthetic_counts");
        } else {
            if (syn_labels < 1)
                throw ConfigError(origin + ": synthetic corpus needs synthetic_labels");
            if (syn_max < 1)
                throw ConfigError(origin + ": synthetic corpus needs synthetic_max_count");
            spec.profile = ImbalanceProfile::geometric((int)syn_labels, syn_max, syn_min);
        }
        if (!builtin_profile) spec.profile.cardinality_distribution = cardinality;
        spec.profile.tokens_per_label = tokens_per_label;
        spec.profile.noise_token_rate = noise_rate;
        spec.total_instances = (int)syn_instances;
        spec.seed = syn_seed;
        config.synthetic = std::move(spec);
    }
    return config;
}

ExperimentConfig parse_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_config_text(buffer.str(), path);
}

// ---- experiment ----

namespace {

constexpr int kColumns = 5;  // br, lp, adaboost_mh, bagging_br, bagging_lp

int column_of(Algorithm a) { return (int)a; }

struct PairOutcome {
    std::optional<EvaluationReport> report;
    std::vector<std::vector<LabelSet>> prefix_predictions;  // ensembles only
};

std::vector<LabelSet> gold_sets(const MultiLabelDataset& dataset) {
    std::vector<LabelSet> out;
    out.reserve(dataset.instances.size());
    for (const auto& inst : dataset.instances) out.push_back(inst.labels);
    return out;
}

}  // namespace

ExperimentResults run_experiment(const ExperimentConfig& config) {
    config.validate();

    DocumentCollection corpus =
        config.corpus_path
            ? load_documents(*config.corpus_path)
            : generate_synthetic(config.synthetic->profile, config.synthetic->total_instances,
                                 config.synthetic->seed);
    if (config.train_count >= (int)corpus.documents.size())
        throw ConfigError("experiment: train_count must leave a non-empty test split");

    auto [train_docs, test_docs] =
        split_documents(corpus.documents, config.train_count, config.split_seed);
    const TextPipeline pipeline = TextPipeline::fit(train_docs, corpus.space, config.pipeline);
    const MultiLabelDataset& train = pipeline.fitted_training_data();
    const MultiLabelDataset test = pipeline.transform_documents(test_docs, corpus.space);
    const std::vector<LabelSet> golds = gold_sets(test);
    const int q = corpus.space.size();

    ExperimentResults results;
    results.training_counts = label_distribution(train).per_label_count;

    const int t_max = config.iterations;
    auto in_config = [&](Algorithm a) {
        return std::find(config.algorithms.begin(), config.algorithms.end(), a) !=
               config.algorithms.end();
    };

    // One outcome per (weak row, algorithm column).
    std::vector<std::array<PairOutcome, kColumns>> grid(config.weak_kinds.size());

    for (std::size_t row = 0; row < config.weak_kinds.size(); ++row) {
        const WeakKind weak_kind = config.weak_kinds[row];
        for (Algorithm algorithm : kAllAlgorithms) {
            if (!in_config(algorithm)) continue;
            WeakSpec weak;
            weak.kind = weak_kind;
            weak.seed = hash_seed(config.master_seed, (std::uint64_t)column_of(algorithm),
                                  (std::uint64_t)weak_kind);
            PairOutcome& outcome = grid[row][std::size_t(column_of(algorithm))];

            switch (algorithm) {
                case Algorithm::br: {
                    const BRModel model = train_br(train, weak);
                    std::vector<LabelSet> preds(test.instances.size());
                    parallel::parallel_for(test.instances.size(), [&](std::size_t i) {
                        preds[i] = predict_br(model, test.instances[i].vector).labels;
                    });
                    outcome.report = evaluate(preds, golds, q);
                    break;
                }
                case Algorithm::lp: {
                    const LPModel model = train_lp(train, weak);
                    std::vector<LabelSet> preds(test.instances.size());
                    parallel::parallel_for(test.instances.size(), [&](std::size_t i) {
                        preds[i] = predict_lp(model, test.instances[i].vector).labels;
                    });
                    outcome.report = evaluate(preds, golds, q);
                    break;
                }
                case Algorithm::adaboost_mh: {
                    const AdaBoostMHModel model = train_adaboost_mh(train, weak, t_max);
                    const int rounds = (int)model.rounds.size();
                    if (rounds < t_max)
                        results.footnotes.push_back(
                            std::string("adaboost_mh/") + weak_kind_name(weak_kind) +
                            " stopped early after " + std::to_string(rounds) + " of " +
                            std::to_string(t_max) + " rounds");
                    outcome.prefix_predictions.assign(
                        std::size_t(rounds), std::vector<LabelSet>(test.instances.size()));
                    parallel::parallel_for(test.instances.size(), [&](std::size_t i) {
                        const auto prefixes =
                            predict_adaboost_prefixes(model, test.instances[i].vector);
                        for (int t = 0; t < rounds; ++t)
                            outcome.prefix_predictions[std::size_t(t)][i] =
                                prefixes[std::size_t(t)].labels;
                    });
                    outcome.report =
                        evaluate(outcome.prefix_predictions.back(), golds, q);
                    break;
                }
                case Algorithm::bagging_br:
                case Algorithm::bagging_lp: {
                    BaggingOptions options;
                    options.members = t_max;
                    const BaseKind base =
                        algorithm == Algorithm::bagging_br ? BaseKind::br : BaseKind::lp;
                    const BaggingModel model =
                        train_bagging(train, base, weak, options, hash_seed(weak.seed, 1));
                    outcome.prefix_predictions.assign(
                        std::size_t(t_max), std::vector<LabelSet>(test.instances.size()));
                    parallel::parallel_for(test.instances.size(), [&](std::size_t i) {
                        const auto prefixes =
                            predict_bagging_prefixes(model, test.instances[i].vector);
                        for (int t = 0; t < t_max; ++t)
                            outcome.prefix_predictions[std::size_t(t)][i] =
                                prefixes[std::size_t(t)].labels;
                    });
                    outcome.report = evaluate(outcome.prefix_predictions.back(), golds, q);
                    break;
                }
            }
        }
    }

    // Tables.
    for (MetricKind metric : kAllMetrics) {
        ResultsTable table;
        table.metric = metric;
        table.rows = config.weak_kinds;
        table.cells.resize(config.weak_kinds.size());
        for (std::size_t row = 0; row < config.weak_kinds.size(); ++row)
            for (int col = 0; col < kColumns; ++col)
                if (grid[row][std::size_t(col)].report)
                    table.cells[row][std::size_t(col)] =
                        metric_value(*grid[row][std::size_t(col)].report, metric);
        results.tables.push_back(std::move(table));
    }

    // Sweep series: ensembles evaluate every iteration prefix, baselines
    // contribute flat reference lines.
    for (std::size_t row = 0; row < config.weak_kinds.size(); ++row) {
        for (Algorithm algorithm : kAllAlgorithms) {
            if (!in_config(algorithm)) continue;
            const PairOutcome& outcome = grid[row][std::size_t(column_of(algorithm))];
            SweepSeries series;
            series.algorithm = algorithm;
            series.weak = config.weak_kinds[row];
            if (algorithm == Algorithm::br || algorithm == Algorithm::lp) {
                series.flat_baseline = true;
                const EvaluationReport& r = *outcome.report;
                for (int t = 1; t <= t_max; ++t)
                    series.points.push_back({t, r.hamming_loss, r.subset_accuracy,
                                             r.example_accuracy, r.micro_f1});
            } else {
                for (std::size_t t = 0; t < outcome.prefix_predictions.size(); ++t) {
                    const EvaluationReport r =
                        evaluate(outcome.prefix_predictions[t], golds, q);
                    series.points.push_back({(int)t + 1, r.hamming_loss, r.subset_accuracy,
                                             r.example_accuracy, r.micro_f1});
                }
            }
            results.sweeps.push_back(std::move(series));
        }
    }

    // Margin reports for every ensemble against its matching baseline.
    const std::array<std::pair<Algorithm, Algorithm>, 3> margin_pairs = {
        std::pair{Algorithm::adaboost_mh, Algorithm::br},
        std::pair{Algorithm::bagging_br, Algorithm::br},
        std::pair{Algorithm::bagging_lp, Algorithm::lp}};
    for (std::size_t row = 0; row < config.weak_kinds.size(); ++row) {
        for (const auto& [approach, baseline] : margin_pairs) {
            if (!in_config(approach) || !in_config(baseline)) continue;
            const auto& approach_report = grid[row][std::size_t(column_of(approach))].report;
            const auto& baseline_report = grid[row][std::size_t(column_of(baseline))].report;
            MarginReportEntry entry;
            entry.approach = approach;
            entry.baseline = baseline;
            entry.weak = config.weak_kinds[row];
            entry.report =
                accuracy_margin(*baseline_report, *approach_report, results.training_counts);
            results.margins.push_back(std::move(entry));
        }
    }
    return results;
}

// ---- emitters ----

namespace {

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string format_value6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

const std::array<const char*, 5> kColumnNames = {"br", "lp", "adaboost_mh", "bagging_br",
                                                 "bagging_lp"};

// A starred cell beats the better of the two baselines in its row.
bool starred(const ResultsTable& table, std::size_t row, int col) {
    if (col < 2) return false;  // baselines themselves
    const auto& cells = table.cells[row];
    if (!cells[std::size_t(col)]) return false;
    std::optional<double> best_baseline;
    for (int b = 0; b < 2; ++b) {
        if (!cells[std::size_t(b)]) continue;
        if (!best_baseline) {
            best_baseline = *cells[std::size_t(b)];
        } else {
            best_baseline = metric_lower_is_better(table.metric)
                                ? std::min(*best_baseline, *cells[std::size_t(b)])
                                : std::max(*best_baseline, *cells[std::size_t(b)]);
        }
    }
    if (!best_baseline) return false;
    const double v = *cells[std::size_t(col)];
    return metric_lower_is_better(table.metric) ? v < *best_baseline : v > *best_baseline;
}

}  // namespace

std::string emit_table(const ResultsTable& table, const std::string& format) {
    if (format == "text") {
        std::ostringstream out;
        out << "# " << metric_name(table.metric) << '\n';
        out << "weak";
        for (std::size_t c = 0; c < kColumnNames.size(); ++c)
            out << '\t' << kColumnNames[c];
        out << '\n';
        for (std::size_t row = 0; row < table.rows.size(); ++row) {
            out << weak_kind_name(table.rows[row]);
            for (int col = 0; col < kColumns; ++col) {
                const auto& cell = table.cells[row][std::size_t(col)];
                out << '\t';
                if (!cell) {
                    out << "N/A";
                } else {
                    out << format_value(*cell);
                    if (starred(table, row, col)) out << '*';
                }
            }
            out << '\n';
        }
        return out.str();
    }
    if (format == "csv") {
        std::ostringstream out;
        out << "weak";
        for (const char* name : kColumnNames) out << ',' << name;
        out << '\n';
        for (std::size_t row = 0; row < table.rows.size(); ++row) {
            out << weak_kind_name(table.rows[row]);
            for (int col = 0; col < kColumns; ++col) {
                const auto& cell = table.cells[row][std::size_t(col)];
                out << ',' << (cell ? format_value(*cell) : "N/A");
            }
            out << '\n';
        }
        return out.str();
    }
    if (format == "jsonl") {
        std::ostringstream out;
        for (std::size_t row = 0; row < table.rows.size(); ++row) {
            nlohmann::json line;
            line["metric"] = metric_name(table.metric);
            line["weak"] = weak_kind_name(table.rows[row]);
            for (int col = 0; col < kColumns; ++col) {
                const auto& cell = table.cells[row][std::size_t(col)];
                if (cell)
                    line[kColumnNames[std::size_t(col)]] = *cell;
                else
                    line[kColumnNames[std::size_t(col)]] = nullptr;
            }
            out << line.dump() << '\n';
        }
        return out.str();
    }
    throw ConfigError("emit_table: unknown format '" + format + "'");
}

std::string emit_sweep_csv(const ExperimentResults& results) {
    std::ostringstream out;
    out << "algorithm,weak,iteration,hamming_loss,subset_accuracy,example_accuracy,micro_f1\n";
    for (const SweepSeries& series : results.sweeps) {
        for (const SweepPoint& p : series.points) {
            out << algorithm_name(series.algorithm) << ',' << weak_kind_name(series.weak) << ','
                << p.iteration << ',' << format_value6(p.hamming_loss) << ','
                << format_value6(p.subset_accuracy) << ',' << format_value6(p.example_accuracy)
                << ',' << format_value6(p.micro_f1) << '\n';
        }
    }
    return out.str();
}

std::string emit_margin_csv(const MarginReportEntry& entry) {
    std::ostringstream out;
    out << "label_id,training_count,baseline_accuracy,approach_accuracy,margin\n";
    for (const MarginRow& row : entry.report.rows) {
        out << row.label_id << ',' << row.training_count << ','
            << format_value6(row.baseline_accuracy) << ',' << format_value6(row.approach_accuracy)
            << ',' << format_value6(row.margin) << '\n';
    }
    return out.str();
}

void write_experiment_outputs(const ExperimentResults& results, const ExperimentConfig& config,
                              const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw DataError("cannot create output directory: " + out_dir);

    const std::string ext = config.report_format == "text"
                                ? ".txt"
                                : (config.report_format == "csv" ? ".csv" : ".jsonl");
    auto write_file = [&](const std::string& name, const std::string& content) {
        const std::string path = out_dir + "/" + name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw DataError("cannot write " + path);
        out << content;
        if (!out) throw DataError("write failed: " + path);
    };

    for (const ResultsTable& table : results.tables) {
        std::string content = emit_table(table, config.report_format);
        if (config.report_format == "text" && !results.footnotes.empty()) {
            content += "#\n";
            for (const std::string& note : results.footnotes) content += "# " + note + "\n";
        }
        write_file(std::string("table_") + metric_name(table.metric) + ext, content);
    }
    write_file("sweep.csv", emit_sweep_csv(results));
    for (const MarginReportEntry& entry : results.margins) {
        const std::string name = std::string("margin_") + algorithm_name(entry.approach) +
                                 "_vs_" + algorithm_name(entry.baseline) + "_" +
                                 weak_kind_name(entry.weak) + ".csv";
        write_file(name, emit_margin_csv(entry));
    }
}

}  // namespace mltc
