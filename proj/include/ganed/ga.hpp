#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ganed/distances.hpp"
#include "ganed/rng.hpp"

namespace ganed::ga {

/// Run parameters for the real-valued GA. Genes are frequency factors, so
/// optimize() additionally requires [lower, upper] to stay within [0, 1].
struct GaConfig {
  int psize = 12;
  int ngen = 20;
  double mrate = 0.2;
  double srate = 0.5;
  int npar = 1;
  std::uint64_t seed = 0;
  double lower = 0.0;
  double upper = 1.0;

  /// Throws config_error unless psize >= 2, ngen >= 1, mrate and srate lie
  /// in [0, 1], npar >= 1 and lower < upper.
  void validate() const;
};

/// One candidate lambda vector; fitness caches the objective value (the
/// LOOCV error in the classification pipeline) and is empty until evaluated.
struct Chromosome {
  std::vector<double> genes;
  std::optional<double> fitness;
};

using Population = std::vector<Chromosome>;

/// Objective to minimize. Must be deterministic and return finite values.
using FitnessFunction = std::function<double(std::span<const double>)>;

struct GenerationStats {
  int generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  std::vector<double> best_genes;
};

/// One entry per evaluated generation, entry 0 being the initial population.
/// best_fitness never increases from one entry to the next.
using GaTrace = std::vector<GenerationStats>;

struct GaResult {
  FrequencyFactors best;
  double best_fitness = 0.0;
  GaTrace trace;
};

/// Chromosomes kept by select(): ceil(srate * psize).
std::size_t selection_count(const GaConfig& cfg);

/// psize chromosomes with every gene drawn uniformly from [lower, upper),
/// chromosome-major draw order. Fitness left empty.
Population initialize(const GaConfig& cfg, Rng& rng);

/// Rank truncation: the selection_count() chromosomes with the lowest
/// fitness, ties keeping the earlier index. Every chromosome must already
/// carry a fitness.
Population select(const Population& population, const GaConfig& cfg);

/// Single-point crossover: genes [0, cut) from a, [cut, npar) from b.
Chromosome cross_pair(const Chromosome& a, const Chromosome& b, int cut);

/// The children needed to grow parents back to psize. Draw order per child:
/// both parent indices (uniform, with replacement), then the cut in
/// [1, npar - 1]. With npar == 1 one uniformly chosen parent is copied
/// instead. Children carry no fitness. Requires at least two parents.
Population crossover(const Population& parents, const GaConfig& cfg, Rng& rng);

/// Redraws min(ceil(mrate * size * npar), available) gene slots, sampled
/// uniformly without replacement from every chromosome except the current
/// best (ties on fitness keep the earliest; no exemption when nothing is
/// evaluated yet). size is population.size(). Mutated chromosomes lose their
/// cached fitness.
void mutate(Population& population, const GaConfig& cfg, Rng& rng);

/// Full run: initialize, then ngen rounds of select -> crossover -> mutate,
/// evaluating chromosomes as they appear. Costs at most psize * (ngen + 1)
/// fitness calls and is bit-identical across reruns of the same cfg.
GaResult optimize(const GaConfig& cfg, const FitnessFunction& fitness);

}  // namespace ganed::ga
