#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mltc/corpus.hpp"
#include "mltc/metrics.hpp"
#include "mltc/multilabel.hpp"
#include "mltc/preprocess.hpp"
#include "mltc/weak_learners.hpp"

namespace mltc {

enum class Algorithm { br, lp, adaboost_mh, bagging_br, bagging_lp };
inline constexpr std::array<Algorithm, 5> kAllAlgorithms = {
    Algorithm::br, Algorithm::lp, Algorithm::adaboost_mh, Algorithm::bagging_br,
    Algorithm::bagging_lp};

const char* algorithm_name(Algorithm a);                  // underscore form
Algorithm algorithm_from_name(const std::string& name);   // accepts - and _

enum class MetricKind { hamming_loss, subset_accuracy, example_accuracy, micro_f1 };
inline constexpr std::array<MetricKind, 4> kAllMetrics = {
    MetricKind::hamming_loss, MetricKind::subset_accuracy, MetricKind::example_accuracy,
    MetricKind::micro_f1};

const char* metric_name(MetricKind m);
bool metric_lower_is_better(MetricKind m);
double metric_value(const EvaluationReport& report, MetricKind m);

// ---- trained artifact (pipeline + model, self-contained) ----

struct TrainedModel {
    Algorithm algorithm = Algorithm::br;
    WeakKind weak = WeakKind::stump;
    LabelSpace space;
    TextPipeline pipeline;
    MultiLabelModel model;
};

// Versioned JSON with a content checksum. Loading verifies the version,
// then the checksum, then reconstructs the exact model: a round trip
// predicts identically, bit for bit.
void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);
inline constexpr int kModelFormatVersion = 1;

// ---- experiment configuration ----

struct SyntheticSpec {
    ImbalanceProfile profile;
    int total_instances = 0;
    std::uint64_t seed = 0;
};

struct ExperimentConfig {
    // Exactly one corpus source.
    std::optional<std::string> corpus_path;
    std::optional<SyntheticSpec> synthetic;

    PipelineConfig pipeline;
    int train_count = 0;
    std::uint64_t split_seed = 0;

    std::vector<Algorithm> algorithms;
    std::vector<WeakKind> weak_kinds;
    int iterations = 20;  // boosting rounds and bagging members
    std::uint64_t master_seed = 0;
    std::string report_format = "text";  // text | csv | jsonl

    void validate() const;  // throws ConfigError
};

// INI-style file with [corpus] / [pipeline] / [split] / [experiment]
// sections. Unknown sections or keys are configuration errors.
ExperimentConfig parse_experiment_config(const std::string& path);
ExperimentConfig parse_experiment_config_text(const std::string& text,
                                              const std::string& origin);

// "1:0.65,2:0.3,3:0.05" -> probabilities for set sizes 1..max.
std::vector<double> parse_cardinality_spec(const std::string& spec);

// Trains one algorithm on an already-vectorized dataset. `iterations` maps
// to boosting rounds and bagging members alike.
MultiLabelModel train_algorithm(Algorithm algorithm, const MultiLabelDataset& train,
                                const WeakSpec& weak, int iterations,
                                double vote_threshold = 0.5);

// ---- experiment results ----

struct ResultsTable {
    MetricKind metric = MetricKind::hamming_loss;
    std::vector<WeakKind> rows;
    // Column order: br, lp, adaboost_mh, bagging_br, bagging_lp.
    // A cell is set iff that (algorithm, weak) pair ran.
    std::vector<std::array<std::optional<double>, 5>> cells;
};

// Renders the table. The text format stars approach cells that beat the
// better of the two baselines in their row (lower wins for hamming loss);
// N/A appears literally in every format.
std::string emit_table(const ResultsTable& table, const std::string& format);

struct SweepPoint {
    int iteration = 0;
    double hamming_loss = 0.0;
    double subset_accuracy = 0.0;
    double example_accuracy = 0.0;
    double micro_f1 = 0.0;
};

struct SweepSeries {
    Algorithm algorithm = Algorithm::br;
    WeakKind weak = WeakKind::stump;
    bool flat_baseline = false;  // baselines repeat one value as a reference line
    std::vector<SweepPoint> points;
};

struct MarginReportEntry {
    Algorithm approach = Algorithm::adaboost_mh;
    Algorithm baseline = Algorithm::br;
    WeakKind weak = WeakKind::stump;
    MarginReport report;
};

struct ExperimentResults {
    std::vector<ResultsTable> tables;  // one per metric, kAllMetrics order
    std::vector<SweepSeries> sweeps;
    std::vector<MarginReportEntry> margins;
    std::vector<std::string> footnotes;
    std::vector<std::int64_t> training_counts;  // per label, train split
};

ExperimentResults run_experiment(const ExperimentConfig& config);

// Writes tables (table_<metric>.<ext>), sweep.csv and margin_*.csv into
// out_dir. Every byte is determined by (config, seeds).
void write_experiment_outputs(const ExperimentResults& results, const ExperimentConfig& config,
                              const std::string& out_dir);

std::string emit_sweep_csv(const ExperimentResults& results);
std::string emit_margin_csv(const MarginReportEntry& entry);

// ---- CLI ----

// Exit codes: 0 ok, 2 configuration error, 3 data error, 4 internal error.
int run_cli(const std::vector<std::string>& args);

}  // namespace mltc
