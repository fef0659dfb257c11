#include "ganed/ga.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "ganed/errors.hpp"

namespace ganed::ga {
namespace {

constexpr std::size_t kNoElite = std::numeric_limits<std::size_t>::max();

// Smallest index holding the minimal cached fitness; kNoElite when nothing
// has been evaluated yet.
std::size_t elite_index(const Population& population) {
  std::size_t best = kNoElite;
  for (std::size_t i = 0; i < population.size(); ++i) {
    if (!population[i].fitness) continue;
    if (best == kNoElite || *population[i].fitness < *population[best].fitness)
      best = i;
  }
  return best;
}

void evaluate(Population& population, const FitnessFunction& fitness) {
  for (auto& chromosome : population) {
    if (chromosome.fitness) continue;
    const double value = fitness(chromosome.genes);
    if (!std::isfinite(value))
      throw std::invalid_argument("fitness returned a non-finite value");
    chromosome.fitness = value;
  }
}

}  // namespace

void GaConfig::validate() const {
  if (psize < 2) throw config_error("psize must be at least 2");
  if (ngen < 1) throw config_error("ngen must be at least 1");
  if (!(mrate >= 0.0 && mrate <= 1.0))
    throw config_error("mrate must lie in [0, 1]");
  if (!(srate >= 0.0 && srate <= 1.0))
    throw config_error("srate must lie in [0, 1]");
  if (npar < 1) throw config_error("npar must be at least 1");
  if (!(lower < upper))
    throw config_error("lower gene bound must be below the upper bound");
}

std::size_t selection_count(const GaConfig& cfg) {
  return static_cast<std::size_t>(
      std::ceil(cfg.srate * static_cast<double>(cfg.psize)));
}

Population initialize(const GaConfig& cfg, Rng& rng) {
  cfg.validate();
  Population population(static_cast<std::size_t>(cfg.psize));
  for (auto& chromosome : population) {
    chromosome.genes.resize(static_cast<std::size_t>(cfg.npar));
    for (auto& gene : chromosome.genes)
      gene = rng.uniform(cfg.lower, cfg.upper);
  }
  return population;
}

Population select(const Population& population, const GaConfig& cfg) {
  for (const auto& chromosome : population) {
    if (!chromosome.fitness)
      throw std::invalid_argument(
          "select requires every chromosome to be evaluated");
  }
  std::vector<std::size_t> order(population.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return *population[a].fitness < *population[b].fitness;
                   });
  const std::size_t keep = std::min(selection_count(cfg), population.size());
  Population pool;
  pool.reserve(keep);
  for (std::size_t rank = 0; rank < keep; ++rank)
    pool.push_back(population[order[rank]]);
  return pool;
}

Chromosome cross_pair(const Chromosome& a, const Chromosome& b, int cut) {
  if (a.genes.size() != b.genes.size())
    throw std::invalid_argument("parents disagree on gene count");
  if (cut < 0 || cut > static_cast<int>(a.genes.size()))
    throw std::invalid_argument("cut lies outside the chromosome");
  Chromosome child;
  child.genes.assign(a.genes.begin(), a.genes.begin() + cut);
  child.genes.insert(child.genes.end(), b.genes.begin() + cut, b.genes.end());
  return child;
}

Population crossover(const Population& parents, const GaConfig& cfg,
                     Rng& rng) {
  if (parents.size() < 2)
    throw std::invalid_argument("crossover needs at least two parents");
  const std::size_t target = static_cast<std::size_t>(cfg.psize);
  Population children;
  children.reserve(target > parents.size() ? target - parents.size() : 0);
  while (parents.size() + children.size() < target) {
    if (cfg.npar == 1) {
      const Chromosome& parent = parents[rng.index(parents.size())];
      children.push_back({parent.genes, std::nullopt});
      continue;
    }
    const Chromosome& a = parents[rng.index(parents.size())];
    const Chromosome& b = parents[rng.index(parents.size())];
    const int cut =
        1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(cfg.npar) - 1));
    children.push_back(cross_pair(a, b, cut));
  }
  return children;
}

void mutate(Population& population, const GaConfig& cfg, Rng& rng) {
  const std::size_t npar = static_cast<std::size_t>(cfg.npar);
  for (const auto& chromosome : population) {
    if (chromosome.genes.size() != npar)
      throw std::invalid_argument("chromosome gene count disagrees with npar");
  }
  const std::size_t elite = elite_index(population);
  std::vector<std::size_t> slots;
  slots.reserve(population.size() * npar);
  for (std::size_t c = 0; c < population.size(); ++c) {
    if (c == elite) continue;
    for (std::size_t g = 0; g < npar; ++g) slots.push_back(c * npar + g);
  }
  const double requested =
      cfg.mrate * static_cast<double>(population.size()) *
      static_cast<double>(npar);
  const std::size_t count = std::min(
      static_cast<std::size_t>(std::ceil(requested)), slots.size());
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t pick = t + rng.index(slots.size() - t);
    std::swap(slots[t], slots[pick]);
    Chromosome& target = population[slots[t] / npar];
    target.genes[slots[t] % npar] = rng.uniform(cfg.lower, cfg.upper);
    target.fitness.reset();
  }
}

GaResult optimize(const GaConfig& cfg, const FitnessFunction& fitness) {
  cfg.validate();
  if (!fitness)
    throw std::invalid_argument("optimize requires a fitness function");
  if (cfg.lower < 0.0 || cfg.upper > 1.0)
    throw config_error("frequency factors live in [0, 1]; tighten the bounds");
  if (selection_count(cfg) < 2)
    throw config_error("srate keeps fewer than two parents for mating");

  Rng rng(cfg.seed);
  Population population = initialize(cfg, rng);
  evaluate(population, fitness);

  GaTrace trace;
  trace.reserve(static_cast<std::size_t>(cfg.ngen) + 1);
  const auto record = [&](int generation) {
    double sum = 0.0;
    for (const auto& chromosome : population) sum += *chromosome.fitness;
    const std::size_t best = elite_index(population);
    trace.push_back({generation, *population[best].fitness,
                     sum / static_cast<double>(population.size()),
                     population[best].genes});
  };
  record(0);

  for (int generation = 1; generation <= cfg.ngen; ++generation) {
    Population next = select(population, cfg);
    Population children = crossover(next, cfg, rng);
    std::move(children.begin(), children.end(), std::back_inserter(next));
    population = std::move(next);
    mutate(population, cfg, rng);
    evaluate(population, fitness);
    record(generation);
  }

  FrequencyFactors best(trace.back().best_genes);
  const double best_fitness = trace.back().best_fitness;
  return {std::move(best), best_fitness, std::move(trace)};
}

}  // namespace ganed::ga
