#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ganed/distances.hpp"
#include "ganed/errors.hpp"
#include "ganed/experiment.hpp"
#include "ganed/sax.hpp"
#include "ganed/ucr.hpp"

namespace {

using namespace ganed;

std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string format_lambdas(const std::vector<double>& lambdas) {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (i) out += ';';
    std::snprintf(buf, sizeof buf, "%.5f", lambdas[i]);
    out += buf;
  }
  return out;
}

std::vector<double> parse_lambda_list(const std::string& text) {
  std::vector<double> lambdas;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string_view field(text.data() + start, comma - start);
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
      throw config_error("bad lambda '" + std::string(field) + "'");
    if (!(value >= 0.0 && value <= 1.0))
      throw config_error("lambdas must lie in [0, 1]");
    lambdas.push_back(value);
    start = comma + 1;
  }
  return lambdas;
}

void require_alpha(int alpha) {
  if (alpha < 2 || alpha > 64)
    throw config_error("alpha " + std::to_string(alpha) +
                       " lies outside [2, 64]");
}

void require_fits(const SeriesDataset& ds, int paa_segments) {
  std::size_t min_len = std::numeric_limits<std::size_t>::max();
  for (const auto& item : ds.items)
    min_len = std::min(min_len, item.series.size());
  if (static_cast<std::size_t>(paa_segments) > min_len)
    throw config_error("paa_segments " + std::to_string(paa_segments) +
                       " exceeds the shortest series (" +
                       std::to_string(min_len) + " samples)");
}

Alphabet union_alphabet(const std::string& a, const std::string& b) {
  std::string glyphs = a + b;
  std::sort(glyphs.begin(), glyphs.end());
  glyphs.erase(std::unique(glyphs.begin(), glyphs.end()), glyphs.end());
  for (char filler : {'#', '$'}) {
    if (glyphs.size() >= 2) break;
    if (glyphs.find(filler) == std::string::npos) glyphs.push_back(filler);
  }
  std::sort(glyphs.begin(), glyphs.end());
  return Alphabet::from_glyphs(glyphs);
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw data_error("cannot write '" + out_path + "'");
  out << text;
}

struct DistArgs {
  std::string first;
  std::string second;
  std::string distance = "ed";
  std::string lambdas;
  int alpha = 0;
};

void run_dist(const DistArgs& args) {
  const DistanceKind kind = parse_distance(args.distance);
  if (!args.lambdas.empty() && kind != DistanceKind::ganed)
    throw config_error("--lambda applies only to the ganed distance");

  double value = 0.0;
  if (kind == DistanceKind::mindist) {
    if (args.alpha == 0) throw config_error("mindist needs --alpha");
    require_alpha(args.alpha);
    const Alphabet alphabet = Alphabet::sax(args.alpha);
    const SymbolicSequence s = make_sequence(args.first, alphabet);
    const SymbolicSequence t = make_sequence(args.second, alphabet);
    if (s.size() != t.size())
      throw data_error("mindist needs equal-length words");
    value = mindist(s, t, s.size(), gaussian_breakpoints(args.alpha));
  } else {
    const Alphabet alphabet = union_alphabet(args.first, args.second);
    const SymbolicSequence s = make_sequence(args.first, alphabet);
    const SymbolicSequence t = make_sequence(args.second, alphabet);
    if (kind == DistanceKind::ed) {
      value = edit_distance(s, t);
    } else if (kind == DistanceKind::ned) {
      value = ned(s, t);
    } else {
      if (args.lambdas.empty())
        throw config_error("the ganed distance needs --lambda");
      value =
          ganed::ganed(s, t, FrequencyFactors(parse_lambda_list(args.lambdas)));
    }
  }
  std::cout << format_double(value) << "\n";
}

struct SaxArgs {
  std::string train;
  int alpha = 0;
  int paa_segments = 0;
  std::string out;
};

void run_sax(const SaxArgs& args) {
  require_alpha(args.alpha);
  if (args.paa_segments < 1)
    throw config_error("paa_segments must be at least 1");
  const SeriesDataset ds = load_ucr(args.train);
  require_fits(ds, args.paa_segments);
  const LabeledDataset words =
      transform_dataset(ds, args.paa_segments, args.alpha);
  std::string text;
  for (const auto& item : words.items) {
    text += std::to_string(item.label);
    text += ' ';
    text += item.sequence.to_glyphs();
    text += '\n';
  }
  write_output(text, args.out);
}

struct ClassifyArgs {
  std::string train;
  std::string test;
  int alpha = 0;
  int paa_segments = 0;
  std::string distance = "ganed";
  std::string evaluation = "holdout";
  std::string lambdas;
};

void run_classify(const ClassifyArgs& args) {
  require_alpha(args.alpha);
  ExperimentConfig cfg;
  cfg.train_path = args.train;
  cfg.test_path = args.test;
  cfg.alphabet_sizes = {args.alpha};
  cfg.paa_segments = args.paa_segments;
  cfg.distance = parse_distance(args.distance);
  cfg.evaluation = parse_evaluation(args.evaluation);
  if (!args.lambdas.empty()) {
    cfg.fixed_lambdas = parse_lambda_list(args.lambdas);
    cfg.gram_depths = {static_cast<int>(cfg.fixed_lambdas->size())};
  } else {
    if (cfg.distance == DistanceKind::ganed)
      throw config_error(
          "classify needs --lambda for ganed; tune with optimize or "
          "experiment");
    cfg.gram_depths = {1};
  }
  const ExperimentResult result = run_experiment(cfg);
  const ExperimentRow& row = result.rows.front();
  std::cout << "train_error " << format_double(row.train_error.value())
            << "  # " << row.train_error.misclassified << "/"
            << row.train_error.total << "\n";
  std::cout << "test_error " << format_double(row.test_error.value())
            << "  # " << row.test_error.misclassified << "/"
            << row.test_error.total << "\n";
}

struct OptimizeArgs {
  std::string train;
  int alpha = 0;
  int paa_segments = 0;
  int nmax = 1;
  ga::GaConfig ga;
};

void run_optimize(const OptimizeArgs& args) {
  require_alpha(args.alpha);
  if (args.paa_segments < 1)
    throw config_error("paa_segments must be at least 1");
  if (args.nmax < 1) throw config_error("nmax must be at least 1");
  const SeriesDataset train = load_ucr(args.train);
  require_fits(train, args.paa_segments);
  if (train.items.size() < 2)
    throw data_error("the training set needs at least two series");
  const LabeledDataset train_sym =
      transform_dataset(train, args.paa_segments, args.alpha);
  const ga::GaResult got = tune_lambdas(train_sym, args.nmax, args.ga);
  std::cout << "lambdas " << format_lambdas(got.best.lambdas()) << "\n";
  std::cout << "fitness " << format_double(got.best_fitness) << "\n";
}

struct ExperimentArgs {
  std::string train;
  std::string test;
  std::vector<int> alphas = {3, 10, 20};
  int paa_segments = 0;
  std::vector<int> nmaxes = {1};
  std::string lambdas;
  std::string distance = "ganed";
  std::string evaluation = "holdout";
  std::string format = "csv";
  std::string out;
  std::vector<int> sweep;
  ga::GaConfig ga;
};

void run_experiment_cmd(const ExperimentArgs& args) {
  ExperimentConfig cfg;
  cfg.train_path = args.train;
  cfg.test_path = args.test;
  cfg.alphabet_sizes = args.alphas;
  cfg.paa_segments = args.paa_segments;
  cfg.gram_depths = args.nmaxes;
  cfg.ga = args.ga;
  cfg.distance = parse_distance(args.distance);
  cfg.evaluation = parse_evaluation(args.evaluation);
  cfg.output_format = parse_format(args.format);
  cfg.output_path = args.out;
  if (!args.lambdas.empty()) cfg.fixed_lambdas = parse_lambda_list(args.lambdas);

  if (!args.sweep.empty() && cfg.paa_segments > 0)
    throw config_error("use either --paa-segments or --sweep-N, not both");
  if (args.sweep.empty() && cfg.paa_segments < 1)
    throw config_error("one of --paa-segments or --sweep-N is required");

  const SeriesDataset train = load_ucr(args.train);
  const SeriesDataset test = load_ucr(args.test);

  std::string text;
  double wall = 0.0;
  if (args.sweep.empty()) {
    const ExperimentResult result = run_experiment(cfg, train, test);
    wall = result.wall_seconds;
    text = emit_results(result, cfg.output_format);
  } else {
    bool first = true;
    for (int segments : args.sweep) {
      ExperimentConfig swept = cfg;
      swept.paa_segments = segments;
      const ExperimentResult result = run_experiment(swept, train, test);
      wall += result.wall_seconds;
      std::string block = emit_results(result, cfg.output_format);
      if (cfg.output_format == OutputFormat::csv && !first)
        block.erase(0, block.find('\n') + 1);
      text += "# paa_segments=" + std::to_string(segments) + "\n";
      text += block;
      first = false;
    }
  }
  write_output(text, args.out);
  std::cerr << "completed in " << format_double(wall) << " s\n";
}

void add_ga_flags(CLI::App* cmd, ga::GaConfig& ga) {
  cmd->add_option("--seed", ga.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--psize", ga.psize, "GA population size")
      ->capture_default_str();
  cmd->add_option("--ngen", ga.ngen, "GA generation count")
      ->capture_default_str();
  cmd->add_option("--mrate", ga.mrate, "GA mutation rate")
      ->capture_default_str();
  cmd->add_option("--srate", ga.srate, "GA selection rate")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Sequence similarity toolkit: edit distances, n-gram-weighted "
      "variants, SAX discretization and 1-NN experiments"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value config file");

  DistArgs dist_args;
  auto* dist_cmd =
      app.add_subcommand("dist", "Distance between two symbol strings");
  dist_cmd->add_option("first", dist_args.first, "First string")->required();
  dist_cmd->add_option("second", dist_args.second, "Second string")
      ->required();
  dist_cmd->add_option("--distance", dist_args.distance,
                       "ganed, ed, ned or mindist")
      ->capture_default_str();
  dist_cmd->add_option("--lambda", dist_args.lambdas,
                       "Comma-joined frequency factors (ganed)");
  dist_cmd->add_option("--alpha", dist_args.alpha,
                       "Alphabet size (mindist words)");
  dist_cmd->callback([&] { run_dist(dist_args); });

  SaxArgs sax_args;
  auto* sax_cmd =
      app.add_subcommand("sax", "Discretize a series file into words");
  sax_cmd->add_option("--train", sax_args.train, "Input series file")
      ->required();
  sax_cmd->add_option("--alpha", sax_args.alpha, "Alphabet size")->required();
  sax_cmd->add_option("--paa-segments", sax_args.paa_segments, "Word length")
      ->required();
  sax_cmd->add_option("--out", sax_args.out, "Output file (default stdout)");
  sax_cmd->callback([&] { run_sax(sax_args); });

  ClassifyArgs classify_args;
  auto* classify_cmd = app.add_subcommand(
      "classify", "Evaluate one distance on a train/test pair");
  classify_cmd->add_option("--train", classify_args.train, "Training file")
      ->required();
  classify_cmd->add_option("--test", classify_args.test, "Testing file")
      ->required();
  classify_cmd->add_option("--alpha", classify_args.alpha, "Alphabet size")
      ->required();
  classify_cmd
      ->add_option("--paa-segments", classify_args.paa_segments, "Word length")
      ->required();
  classify_cmd
      ->add_option("--distance", classify_args.distance,
                   "ganed, ed, ned or mindist")
      ->capture_default_str();
  classify_cmd
      ->add_option("--evaluation", classify_args.evaluation,
                   "holdout or loocv_on_test")
      ->capture_default_str();
  classify_cmd->add_option("--lambda", classify_args.lambdas,
                           "Comma-joined frequency factors (ganed)");
  classify_cmd->callback([&] { run_classify(classify_args); });

  OptimizeArgs optimize_args;
  auto* optimize_cmd = app.add_subcommand(
      "optimize", "Tune frequency factors on a training set");
  optimize_cmd->add_option("--train", optimize_args.train, "Training file")
      ->required();
  optimize_cmd->add_option("--alpha", optimize_args.alpha, "Alphabet size")
      ->required();
  optimize_cmd
      ->add_option("--paa-segments", optimize_args.paa_segments, "Word length")
      ->required();
  optimize_cmd
      ->add_option("--nmax", optimize_args.nmax, "Deepest n-gram length")
      ->capture_default_str();
  add_ga_flags(optimize_cmd, optimize_args.ga);
  optimize_cmd->callback([&] { run_optimize(optimize_args); });

  ExperimentArgs experiment_args;
  auto* experiment_cmd =
      app.add_subcommand("experiment", "Full tuning-and-evaluation run");
  experiment_cmd->add_option("--train", experiment_args.train, "Training file")
      ->required();
  experiment_cmd->add_option("--test", experiment_args.test, "Testing file")
      ->required();
  experiment_cmd
      ->add_option("--alpha", experiment_args.alphas,
                   "Alphabet sizes (repeatable)")
      ->delimiter(',')
      ->capture_default_str();
  experiment_cmd->add_option("--paa-segments", experiment_args.paa_segments,
                             "Word length");
  experiment_cmd
      ->add_option("--nmax", experiment_args.nmaxes,
                   "Deepest n-gram lengths (repeatable)")
      ->delimiter(',')
      ->capture_default_str();
  experiment_cmd->add_option(
      "--lambda", experiment_args.lambdas,
      "Comma-joined frequency factors; skips the GA (replay)");
  experiment_cmd
      ->add_option("--distance", experiment_args.distance,
                   "ganed, ed, ned or mindist")
      ->capture_default_str();
  experiment_cmd
      ->add_option("--evaluation", experiment_args.evaluation,
                   "holdout or loocv_on_test")
      ->capture_default_str();
  experiment_cmd
      ->add_option("--format", experiment_args.format, "csv or table")
      ->capture_default_str();
  experiment_cmd->add_option("--out", experiment_args.out,
                             "Output file (default stdout)");
  experiment_cmd
      ->add_option("--sweep-N", experiment_args.sweep,
                   "Word lengths to sweep instead of --paa-segments")
      ->delimiter(',');
  add_ga_flags(experiment_cmd, experiment_args.ga);
  experiment_cmd->callback([&] { run_experiment_cmd(experiment_args); });

  int breakpoints_alpha = 0;
  auto* breakpoints_cmd =
      app.add_subcommand("breakpoints", "Print the breakpoint table");
  breakpoints_cmd->add_option("--alpha", breakpoints_alpha, "Alphabet size")
      ->required();
  breakpoints_cmd->callback([&] {
    require_alpha(breakpoints_alpha);
    for (double beta : gaussian_breakpoints(breakpoints_alpha).betas())
      std::cout << format_double(beta) << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const data_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
