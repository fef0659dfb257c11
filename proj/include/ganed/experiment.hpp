#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ganed/classify.hpp"
#include "ganed/ga.hpp"
#include "ganed/ucr.hpp"

namespace ganed {

enum class DistanceKind { ganed, ed, ned, mindist };
enum class EvaluationMode { holdout, loocv_on_test };
enum class OutputFormat { csv, table };

std::string_view to_string(DistanceKind kind);
std::string_view to_string(EvaluationMode mode);
std::string_view to_string(OutputFormat format);

/// Each throws config_error listing the accepted names.
DistanceKind parse_distance(std::string_view name);
EvaluationMode parse_evaluation(std::string_view name);
OutputFormat parse_format(std::string_view name);

/// One full run over alphabet_sizes x gram_depths. paa_segments has no
/// default: the word length is a free choice the experiments must state.
struct ExperimentConfig {
  std::filesystem::path train_path;
  std::filesystem::path test_path;
  std::vector<int> alphabet_sizes;
  int paa_segments = 0;
  std::vector<int> gram_depths;
  ga::GaConfig ga;
  DistanceKind distance = DistanceKind::ganed;
  EvaluationMode evaluation = EvaluationMode::holdout;
  std::optional<std::vector<double>> fixed_lambdas;
  std::filesystem::path output_path;
  OutputFormat output_format = OutputFormat::csv;

  /// Throws config_error unless every alpha lies in [2, 64], gram depths
  /// are >= 1, paa_segments >= 1, the GA parameters validate, and
  /// fixed_lambdas (when present) pairs a ganed run with a single gram
  /// depth of matching length. Paths are checked by the loading overload
  /// of run_experiment, not here.
  void validate() const;
};

/// One (alpha, nmax) cell. lambdas is empty for lambda-free distances;
/// mindist_error is absent when differing series lengths prevent the
/// baseline. train_error is always the leave-one-out error on the
/// transformed training set.
struct ExperimentRow {
  std::string dataset;
  int alpha = 0;
  int nmax = 0;
  std::vector<double> lambdas;
  ErrorRate train_error;
  ErrorRate test_error;
  std::optional<ErrorRate> mindist_error;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  std::uint64_t seed = 0;
  std::string config_hash;
  double wall_seconds = 0.0;
};

/// Seed of the (alpha, nmax) row: the run seed with alpha and nmax folded
/// in through splitmix64. Rows are independent streams, and the whole run
/// replays from the one recorded seed.
std::uint64_t row_seed(std::uint64_t seed, int alpha, int nmax);

/// FNV-1a of the canonical config serialization (output path and format
/// excluded; they do not affect the computation), as 16 hex digits.
std::string hash_config(const ExperimentConfig& cfg);

/// The (paa_segments, alpha) SAX words of every series, labels kept.
LabeledDataset transform_dataset(const SeriesDataset& ds, int paa_segments,
                                 int alpha);

/// GA tuning on one transformed training set, fitness being the
/// leave-one-out ganed error; the experiment's per-row tuning step exposed
/// on its own. tuner.npar is overridden with nmax.
ga::GaResult tune_lambdas(const LabeledDataset& train_sym, int nmax,
                          const ga::GaConfig& tuner);

/// Loads both datasets and runs the pipeline. Component errors are
/// rethrown with (dataset, alpha, nmax) context and their type preserved.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Same, on datasets already in memory; cfg paths are ignored.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const SeriesDataset& train,
                                const SeriesDataset& test);

/// csv: header dataset,alpha,nmax,lambdas,train_error,test_error,
/// mindist_error,seed; lambdas semicolon-joined at 5 decimals; errors in
/// shortest round-trip decimal; an absent baseline is an empty field.
/// table: aligned columns, errors at 3 decimals, the exact fractions in a
/// trailing comment. Throws std::invalid_argument on an empty result.
std::string emit_results(const ExperimentResult& result, OutputFormat format);

/// A results row as the csv serializes it: errors as plain ratios, the
/// exact counts not recoverable from the text.
struct CsvRow {
  std::string dataset;
  int alpha = 0;
  int nmax = 0;
  std::vector<double> lambdas;
  double train_error = 0.0;
  double test_error = 0.0;
  std::optional<double> mindist_error;
  std::uint64_t seed = 0;

  friend bool operator==(const CsvRow&, const CsvRow&) = default;
};

/// Parses emit_results csv text, skipping blank and '#' lines. Throws
/// data_error naming the offending line.
std::vector<CsvRow> parse_results_csv(const std::string& text);

}  // namespace ganed
