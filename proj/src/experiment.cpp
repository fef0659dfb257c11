#include "ganed/experiment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "ganed/distances.hpp"
#include "ganed/errors.hpp"
#include "ganed/ngram.hpp"
#include "ganed/rng.hpp"

namespace ganed {
namespace {

constexpr std::string_view kCsvHeader =
    "dataset,alpha,nmax,lambdas,train_error,test_error,mindist_error,seed";

std::string shortest(double v) {
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string fixed(double v, int digits) {
  std::array<char, 48> buf;
  const int written =
      std::snprintf(buf.data(), buf.size(), "%.*f", digits, v);
  return std::string(buf.data(), static_cast<std::size_t>(written));
}

std::string join_lambdas(const std::vector<double>& lambdas) {
  std::string out;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (i) out += ';';
    out += fixed(lambdas[i], 5);
  }
  return out;
}

std::string fraction(const ErrorRate& e) {
  return std::to_string(e.misclassified) + "/" + std::to_string(e.total);
}

std::vector<std::string_view> split_on(std::string_view text, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(text.substr(start));
      return fields;
    }
    fields.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
T parse_as(std::string_view field, std::size_t line_no,
           std::string_view what) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw data_error("results line " + std::to_string(line_no) + ": bad " +
                     std::string(what) + " '" + std::string(field) + "'");
  return value;
}

template <typename Fn>
auto with_context(const std::string& context, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const data_error& e) {
    throw data_error(context + ": " + e.what());
  } catch (const config_error& e) {
    throw config_error(context + ": " + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(context + ": " + e.what());
  }
}

// The lambda-independent ganed ingredients of every unordered training
// pair, computed once per (alpha, nmax) cell. A fitness call then costs
// only the phi arithmetic, and agrees bit for bit with ganed() because
// both funnel through detail::ganed_from_stats.
class TrainStats {
 public:
  TrainStats(const LabeledDataset& ds, int nmax, NGramCache& cache)
      : size_(ds.items.size()), nmax_(nmax) {
    for (std::size_t i = 0; i < size_; ++i)
      index_.emplace(ds.items[i].sequence.id(), i);
    pairs_.resize(size_ < 2 ? 0 : size_ * (size_ - 1) / 2);
    for (std::size_t i = 0; i < size_; ++i) {
      const SymbolicSequence& s = ds.items[i].sequence;
      for (std::size_t j = i + 1; j < size_; ++j) {
        const SymbolicSequence& t = ds.items[j].sequence;
        PairStats& p = pairs_[flat(i, j)];
        p.ed = edit_distance(s, t);
        p.length_sum = s.size() + t.size();
        p.overlaps.resize(static_cast<std::size_t>(nmax_));
        for (int n = 1; n <= nmax_; ++n)
          p.overlaps[static_cast<std::size_t>(n) - 1] =
              overlap(cache.profile(s, n), cache.profile(t, n));
      }
    }
  }

  // Distance over the cached pairs; defined only for sequences of the
  // source dataset.
  DistanceFunction distance(std::vector<double> lambdas) const {
    return [this, lambdas = std::move(lambdas)](const SymbolicSequence& a,
                                                const SymbolicSequence& b) {
      const std::size_t i = index_.at(a.id());
      const std::size_t j = index_.at(b.id());
      const PairStats& p = pairs_[flat(std::min(i, j), std::max(i, j))];
      return detail::ganed_from_stats(p.ed, lambdas, p.overlaps, p.length_sum);
    };
  }

 private:
  struct PairStats {
    double ed = 0.0;
    std::size_t length_sum = 0;
    std::vector<std::uint64_t> overlaps;
  };

  std::size_t flat(std::size_t i, std::size_t j) const {
    return i * size_ - i * (i + 1) / 2 + (j - i - 1);
  }

  std::size_t size_;
  int nmax_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<PairStats> pairs_;
};

ErrorRate evaluate_error(const LabeledDataset& train_sym,
                         const LabeledDataset& test_sym, EvaluationMode mode,
                         const DistanceFunction& dist) {
  if (mode == EvaluationMode::holdout)
    return holdout_error(train_sym, test_sym, dist);
  return loocv_error(test_sym, dist);
}

LabeledDataset to_words(const SeriesDataset& ds, std::size_t segments,
                        int alpha) {
  LabeledDataset out;
  out.name = ds.name;
  out.items.reserve(ds.items.size());
  for (const auto& item : ds.items)
    out.items.push_back(
        {item.label, sax_transform(item.series, segments, alpha)});
  return out;
}

std::optional<std::size_t> common_length(const SeriesDataset& train,
                                         const SeriesDataset& test) {
  std::optional<std::size_t> len;
  for (const SeriesDataset* ds : {&train, &test}) {
    for (const auto& item : ds->items) {
      if (!len)
        len = item.series.size();
      else if (*len != item.series.size())
        return std::nullopt;
    }
  }
  return len;
}

struct AlphaContext {
  LabeledDataset train_sym;
  LabeledDataset test_sym;
  std::optional<DistanceFunction> mindist_dist;
  std::optional<ErrorRate> baseline;
};

AlphaContext make_alpha_context(const ExperimentConfig& cfg,
                                const SeriesDataset& train,
                                const SeriesDataset& test, int alpha,
                                const std::optional<std::size_t>& common_len) {
  AlphaContext ctx;
  const auto segments = static_cast<std::size_t>(cfg.paa_segments);
  ctx.train_sym = to_words(train, segments, alpha);
  ctx.test_sym = to_words(test, segments, alpha);
  if (common_len) {
    const Breakpoints& bp = gaussian_breakpoints(alpha);
    const std::size_t len = *common_len;
    ctx.mindist_dist = [len, &bp](const SymbolicSequence& a,
                                  const SymbolicSequence& b) {
      return mindist(a, b, len, bp);
    };
    ctx.baseline = evaluate_error(ctx.train_sym, ctx.test_sym, cfg.evaluation,
                                  *ctx.mindist_dist);
  }
  return ctx;
}

ExperimentRow make_row(const ExperimentConfig& cfg, const AlphaContext& ctx,
                       int alpha, int nmax, NGramCache& cache) {
  ExperimentRow row;
  row.dataset = ctx.train_sym.name;
  row.alpha = alpha;
  row.nmax = nmax;
  row.mindist_error = ctx.baseline;

  const EditCosts costs{};
  switch (cfg.distance) {
    case DistanceKind::ganed: {
      const TrainStats stats(ctx.train_sym, nmax, cache);
      std::vector<double> lambdas;
      if (cfg.fixed_lambdas) {
        lambdas = *cfg.fixed_lambdas;
      } else {
        ga::GaConfig tuner = cfg.ga;
        tuner.npar = nmax;
        tuner.seed = row_seed(cfg.ga.seed, alpha, nmax);
        const ga::FitnessFunction fitness =
            [&](std::span<const double> genes) {
              return loocv_error(ctx.train_sym,
                                 stats.distance({genes.begin(), genes.end()}))
                  .value();
            };
        lambdas = ga::optimize(tuner, fitness).best.lambdas();
      }
      row.lambdas = std::move(lambdas);
      row.train_error = loocv_error(ctx.train_sym, stats.distance(row.lambdas));
      const FrequencyFactors factors(row.lambdas);
      const DistanceFunction dist = [&factors, &cache, &costs](
                                        const SymbolicSequence& a,
                                        const SymbolicSequence& b) {
        return ganed(a, b, factors, costs, cache);
      };
      row.test_error =
          evaluate_error(ctx.train_sym, ctx.test_sym, cfg.evaluation, dist);
      break;
    }
    case DistanceKind::ed: {
      const DistanceFunction dist = [&costs](const SymbolicSequence& a,
                                             const SymbolicSequence& b) {
        return edit_distance(a, b, costs);
      };
      row.train_error = loocv_error(ctx.train_sym, dist);
      row.test_error =
          evaluate_error(ctx.train_sym, ctx.test_sym, cfg.evaluation, dist);
      break;
    }
    case DistanceKind::ned: {
      const DistanceFunction dist = [&costs](const SymbolicSequence& a,
                                             const SymbolicSequence& b) {
        return ned(a, b, costs);
      };
      row.train_error = loocv_error(ctx.train_sym, dist);
      row.test_error =
          evaluate_error(ctx.train_sym, ctx.test_sym, cfg.evaluation, dist);
      break;
    }
    case DistanceKind::mindist: {
      if (!ctx.mindist_dist)
        throw data_error("the mindist distance needs equal-length series");
      row.train_error = loocv_error(ctx.train_sym, *ctx.mindist_dist);
      row.test_error = *ctx.baseline;
      break;
    }
  }
  return row;
}

std::string emit_csv(const ExperimentResult& result) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const ExperimentRow& row : result.rows) {
    out += row.dataset;
    out += ',' + std::to_string(row.alpha);
    out += ',' + std::to_string(row.nmax);
    out += ',' + join_lambdas(row.lambdas);
    out += ',' + shortest(row.train_error.value());
    out += ',' + shortest(row.test_error.value());
    out += ',';
    if (row.mindist_error) out += shortest(row.mindist_error->value());
    out += ',' + std::to_string(result.seed);
    out += '\n';
  }
  return out;
}

std::string emit_table(const ExperimentResult& result) {
  const std::array<std::string, 7> header = {"dataset", "alpha",   "nmax",
                                             "lambdas", "train",   "test",
                                             "mindist"};
  std::vector<std::array<std::string, 7>> cells;
  std::vector<std::string> notes;
  for (const ExperimentRow& row : result.rows) {
    cells.push_back(
        {row.dataset, std::to_string(row.alpha), std::to_string(row.nmax),
         row.lambdas.empty() ? std::string("-") : join_lambdas(row.lambdas),
         fixed(row.train_error.value(), 3), fixed(row.test_error.value(), 3),
         row.mindist_error ? fixed(row.mindist_error->value(), 3)
                           : std::string("-")});
    std::string note = "# train " + fraction(row.train_error) + "  test " +
                       fraction(row.test_error);
    if (row.mindist_error) note += "  mindist " + fraction(*row.mindist_error);
    notes.push_back(std::move(note));
  }

  std::array<std::size_t, 7> width{};
  for (std::size_t c = 0; c < 7; ++c) width[c] = header[c].size();
  for (const auto& row : cells)
    for (std::size_t c = 0; c < 7; ++c)
      width[c] = std::max(width[c], row[c].size());

  std::string out =
      "# seed " + std::to_string(result.seed) + "  config " +
      result.config_hash + "\n";
  const auto emit_line = [&](const std::array<std::string, 7>& row,
                             const std::string& note) {
    std::string line;
    for (std::size_t c = 0; c < 7; ++c) {
      line += row[c];
      line.append(width[c] - row[c].size() + 2, ' ');
    }
    line += note;
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  };
  emit_line(header, "");
  for (std::size_t i = 0; i < cells.size(); ++i) emit_line(cells[i], notes[i]);
  return out;
}

}  // namespace

std::string_view to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::ganed: return "ganed";
    case DistanceKind::ed: return "ed";
    case DistanceKind::ned: return "ned";
    case DistanceKind::mindist: return "mindist";
  }
  return "?";
}

std::string_view to_string(EvaluationMode mode) {
  return mode == EvaluationMode::holdout ? "holdout" : "loocv_on_test";
}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "table";
}

DistanceKind parse_distance(std::string_view name) {
  if (name == "ganed") return DistanceKind::ganed;
  if (name == "ed") return DistanceKind::ed;
  if (name == "ned") return DistanceKind::ned;
  if (name == "mindist") return DistanceKind::mindist;
  throw config_error("unknown distance '" + std::string(name) +
                     "'; use ganed, ed, ned or mindist");
}

EvaluationMode parse_evaluation(std::string_view name) {
  if (name == "holdout") return EvaluationMode::holdout;
  if (name == "loocv_on_test") return EvaluationMode::loocv_on_test;
  throw config_error("unknown evaluation '" + std::string(name) +
                     "'; use holdout or loocv_on_test");
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "table") return OutputFormat::table;
  throw config_error("unknown format '" + std::string(name) +
                     "'; use csv or table");
}

void ExperimentConfig::validate() const {
  if (alphabet_sizes.empty())
    throw config_error("at least one alpha is required");
  for (int alpha : alphabet_sizes)
    if (alpha < 2 || alpha > 64)
      throw config_error("alpha " + std::to_string(alpha) +
                         " lies outside [2, 64]");
  if (gram_depths.empty()) throw config_error("at least one nmax is required");
  for (int depth : gram_depths)
    if (depth < 1) throw config_error("nmax must be at least 1");
  if (paa_segments < 1)
    throw config_error("paa_segments must be at least 1");
  ga.validate();
  if (fixed_lambdas) {
    if (distance != DistanceKind::ganed)
      throw config_error("fixed lambdas apply only to the ganed distance");
    if (gram_depths.size() != 1)
      throw config_error("fixed lambdas need a single nmax");
    if (fixed_lambdas->size() != static_cast<std::size_t>(gram_depths[0]))
      throw config_error("expected " + std::to_string(gram_depths[0]) +
                         " lambdas, got " +
                         std::to_string(fixed_lambdas->size()));
    for (double lambda : *fixed_lambdas)
      if (!(lambda >= 0.0 && lambda <= 1.0))
        throw config_error("lambdas must lie in [0, 1]");
  }
}

LabeledDataset transform_dataset(const SeriesDataset& ds, int paa_segments,
                                 int alpha) {
  if (paa_segments < 1)
    throw config_error("paa_segments must be at least 1");
  return to_words(ds, static_cast<std::size_t>(paa_segments), alpha);
}

ga::GaResult tune_lambdas(const LabeledDataset& train_sym, int nmax,
                          const ga::GaConfig& tuner) {
  if (nmax < 1) throw config_error("nmax must be at least 1");
  NGramCache cache;
  const TrainStats stats(train_sym, nmax, cache);
  ga::GaConfig cfg = tuner;
  cfg.npar = nmax;
  const ga::FitnessFunction fitness = [&](std::span<const double> genes) {
    return loocv_error(train_sym, stats.distance({genes.begin(), genes.end()}))
        .value();
  };
  return ga::optimize(cfg, fitness);
}

std::uint64_t row_seed(std::uint64_t seed, int alpha, int nmax) {
  std::uint64_t x = splitmix64(seed);
  x = splitmix64(x ^ static_cast<std::uint64_t>(alpha));
  return splitmix64(x ^ static_cast<std::uint64_t>(nmax));
}

std::string hash_config(const ExperimentConfig& cfg) {
  std::string blob;
  const auto add = [&blob](std::string_view field) {
    blob.append(field);
    blob.push_back('\n');
  };
  add(cfg.train_path.string());
  add(cfg.test_path.string());
  for (int alpha : cfg.alphabet_sizes) add(std::to_string(alpha));
  add("N=" + std::to_string(cfg.paa_segments));
  for (int depth : cfg.gram_depths) add(std::to_string(depth));
  add(std::to_string(cfg.ga.psize));
  add(std::to_string(cfg.ga.ngen));
  add(shortest(cfg.ga.mrate));
  add(shortest(cfg.ga.srate));
  add(std::to_string(cfg.ga.seed));
  add(shortest(cfg.ga.lower));
  add(shortest(cfg.ga.upper));
  add(to_string(cfg.distance));
  add(to_string(cfg.evaluation));
  if (cfg.fixed_lambdas)
    for (double lambda : *cfg.fixed_lambdas) add(shortest(lambda));

  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : blob) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(buf, 16);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.train_path.empty()) throw config_error("a training file is required");
  if (cfg.test_path.empty()) throw config_error("a testing file is required");
  const SeriesDataset train = load_ucr(cfg.train_path);
  const SeriesDataset test = load_ucr(cfg.test_path);
  return run_experiment(cfg, train, test);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const SeriesDataset& train,
                                const SeriesDataset& test) {
  cfg.validate();
  if (train.items.size() < 2)
    throw data_error("the training set needs at least two series");
  if (test.items.empty()) throw data_error("the testing set is empty");
  if (cfg.evaluation == EvaluationMode::loocv_on_test &&
      test.items.size() < 2)
    throw data_error("loocv evaluation needs at least two test series");

  std::size_t min_len = std::numeric_limits<std::size_t>::max();
  for (const SeriesDataset* ds : {&train, &test})
    for (const auto& item : ds->items)
      min_len = std::min(min_len, item.series.size());
  if (static_cast<std::size_t>(cfg.paa_segments) > min_len)
    throw config_error("paa_segments " + std::to_string(cfg.paa_segments) +
                       " exceeds the shortest series (" +
                       std::to_string(min_len) + " samples)");

  const auto started = std::chrono::steady_clock::now();
  ExperimentResult result;
  result.seed = cfg.ga.seed;
  result.config_hash = hash_config(cfg);

  const std::optional<std::size_t> common_len = common_length(train, test);
  if (cfg.distance == DistanceKind::mindist && !common_len)
    throw data_error("the mindist distance needs equal-length series");

  for (int alpha : cfg.alphabet_sizes) {
    const std::string alpha_context =
        "dataset " + train.name + ", alpha " + std::to_string(alpha);
    const AlphaContext ctx = with_context(alpha_context, [&] {
      return make_alpha_context(cfg, train, test, alpha, common_len);
    });
    NGramCache cache;
    for (int nmax : cfg.gram_depths) {
      const std::string context =
          alpha_context + ", nmax " + std::to_string(nmax);
      result.rows.push_back(with_context(
          context, [&] { return make_row(cfg, ctx, alpha, nmax, cache); }));
    }
  }

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return result;
}

std::string emit_results(const ExperimentResult& result, OutputFormat format) {
  if (result.rows.empty()) throw std::invalid_argument("nothing to emit");
  for (const ExperimentRow& row : result.rows)
    if (row.dataset.find(',') != std::string::npos)
      throw std::invalid_argument("dataset names must not contain commas");
  return format == OutputFormat::csv ? emit_csv(result) : emit_table(result);
}

std::vector<CsvRow> parse_results_csv(const std::string& text) {
  std::vector<CsvRow> rows;
  bool header_seen = false;
  std::size_t line_no = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view view = line;
    if (view.empty() || view.front() == '#') continue;
    if (!header_seen) {
      if (view != kCsvHeader)
        throw data_error("results line " + std::to_string(line_no) +
                         ": expected the results header");
      header_seen = true;
      continue;
    }
    const auto fields = split_on(view, ',');
    if (fields.size() != 8)
      throw data_error("results line " + std::to_string(line_no) +
                       ": expected 8 fields, got " +
                       std::to_string(fields.size()));
    CsvRow row;
    row.dataset = std::string(fields[0]);
    row.alpha = parse_as<int>(fields[1], line_no, "alpha");
    row.nmax = parse_as<int>(fields[2], line_no, "nmax");
    if (!fields[3].empty())
      for (std::string_view part : split_on(fields[3], ';'))
        row.lambdas.push_back(parse_as<double>(part, line_no, "lambda"));
    row.train_error = parse_as<double>(fields[4], line_no, "train error");
    row.test_error = parse_as<double>(fields[5], line_no, "test error");
    if (!fields[6].empty())
      row.mindist_error = parse_as<double>(fields[6], line_no, "mindist error");
    row.seed = parse_as<std::uint64_t>(fields[7], line_no, "seed");
    rows.push_back(std::move(row));
  }
  if (!header_seen) throw data_error("results text has no header line");
  return rows;
}

}  // namespace ganed
