#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "ganed/errors.hpp"
#include "ganed/ga.hpp"
#include "ganed/rng.hpp"

using namespace ganed;
using namespace ganed::ga;

namespace {

GaConfig table_config() {
  GaConfig cfg;
  cfg.psize = 12;
  cfg.ngen = 20;
  cfg.mrate = 0.2;
  cfg.srate = 0.5;
  cfg.npar = 1;
  cfg.seed = 42;
  return cfg;
}

double first_gene(std::span<const double> genes) { return genes[0]; }

Chromosome chrom(std::vector<double> genes, std::optional<double> fitness = std::nullopt) {
  return Chromosome{std::move(genes), fitness};
}

}  // namespace

TEST_SUITE("ga") {

TEST_CASE("rng draws are reproducible and uniform draws stay in range") {
  Rng a(7);
  Rng b(7);
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  Rng c(9);
  for (int i = 0; i < 1000; ++i) CHECK(c.index(13) < 13);
  const double lo = Rng(3).uniform(0.25, 0.5);
  CHECK(lo >= 0.25);
  CHECK(lo < 0.5);
}

TEST_CASE("splitmix64 matches the reference sequence") {
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
}

TEST_CASE("config validation") {
  GaConfig cfg = table_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.psize = 1;
  CHECK_THROWS_AS(cfg.validate(), config_error);
  cfg = table_config();
  cfg.ngen = 0;
  CHECK_THROWS_AS(cfg.validate(), config_error);
  cfg = table_config();
  cfg.mrate = 1.25;
  CHECK_THROWS_AS(cfg.validate(), config_error);
  cfg = table_config();
  cfg.srate = -0.5;
  CHECK_THROWS_AS(cfg.validate(), config_error);
  cfg = table_config();
  cfg.npar = 0;
  CHECK_THROWS_AS(cfg.validate(), config_error);
  cfg = table_config();
  cfg.lower = 0.8;
  cfg.upper = 0.8;
  CHECK_THROWS_AS(cfg.validate(), config_error);
}

TEST_CASE("selection_count rounds up") {
  GaConfig cfg = table_config();
  CHECK(selection_count(cfg) == 6);
  cfg.srate = 0.1;
  CHECK(selection_count(cfg) == 2);
  cfg.srate = 0.0;
  CHECK(selection_count(cfg) == 0);
  cfg.srate = 1.0;
  CHECK(selection_count(cfg) == 12);
}

TEST_CASE("initialize draws chromosome-major within the bounds") {
  GaConfig cfg = table_config();
  cfg.psize = 3;
  cfg.npar = 2;
  cfg.lower = 0.25;
  cfg.upper = 0.75;
  Rng rng(42);
  const Population pop = initialize(cfg, rng);
  Rng replay(42);
  REQUIRE(pop.size() == 3);
  for (const auto& chromosome : pop) {
    REQUIRE(chromosome.genes.size() == 2);
    CHECK_FALSE(chromosome.fitness.has_value());
    for (const double g : chromosome.genes) {
      CHECK(g == replay.uniform(0.25, 0.75));
      CHECK(g >= 0.25);
      CHECK(g < 0.75);
    }
  }
}

TEST_CASE("select keeps the lowest-fitness chromosomes in rank order") {
  GaConfig cfg = table_config();
  cfg.psize = 3;
  cfg.srate = 0.34;
  const Population pop{chrom({0.9}, 0.9), chrom({0.1}, 0.1), chrom({0.5}, 0.5)};
  const Population kept = select(pop, cfg);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].genes == std::vector<double>{0.1});
  CHECK(kept[1].genes == std::vector<double>{0.5});
  CHECK(*kept[0].fitness == 0.1);
}

TEST_CASE("select breaks fitness ties by the earlier index") {
  GaConfig cfg = table_config();
  cfg.psize = 5;
  cfg.srate = 0.5;
  Population pop;
  for (int i = 0; i < 5; ++i) pop.push_back(chrom({static_cast<double>(i)}, 0.3));
  const Population kept = select(pop, cfg);
  REQUIRE(kept.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(kept[static_cast<std::size_t>(i)].genes[0] == i);
}

TEST_CASE("select keeps everything at srate 1 and rejects unevaluated input") {
  GaConfig cfg = table_config();
  cfg.psize = 4;
  cfg.srate = 1.0;
  Population pop{chrom({0.2}, 0.4), chrom({0.6}, 0.2), chrom({0.8}, 0.3), chrom({0.1}, 0.1)};
  const Population kept = select(pop, cfg);
  REQUIRE(kept.size() == 4);
  CHECK(kept[0].genes[0] == 0.1);
  CHECK(kept[3].genes[0] == 0.2);
  pop[1].fitness.reset();
  CHECK_THROWS_AS(select(pop, cfg), std::invalid_argument);
}

TEST_CASE("cross_pair splices at the cut") {
  const Chromosome a = chrom({1.0, 2.0, 3.0}, 0.5);
  const Chromosome b = chrom({4.0, 5.0, 6.0}, 0.6);
  CHECK(cross_pair(a, b, 1).genes == std::vector<double>{1.0, 5.0, 6.0});
  CHECK(cross_pair(a, b, 2).genes == std::vector<double>{1.0, 2.0, 6.0});
  CHECK(cross_pair(a, b, 0).genes == b.genes);
  CHECK(cross_pair(a, b, 3).genes == a.genes);
  CHECK_FALSE(cross_pair(a, b, 1).fitness.has_value());
  CHECK_THROWS_AS(cross_pair(a, chrom({1.0}), 1), std::invalid_argument);
  CHECK_THROWS_AS(cross_pair(a, b, 4), std::invalid_argument);
}

TEST_CASE("crossover fills the population back to psize") {
  GaConfig cfg = table_config();
  cfg.psize = 5;
  cfg.npar = 3;
  const Population parents{chrom({0.1, 0.1, 0.1}, 0.1), chrom({0.9, 0.9, 0.9}, 0.2)};
  Rng rng(1);
  const Population children = crossover(parents, cfg, rng);
  REQUIRE(children.size() == 3);
  for (const auto& child : children) {
    CHECK_FALSE(child.fitness.has_value());
    REQUIRE(child.genes.size() == 3);
    // Single-point splice of two uniform parents: a prefix of one value,
    // a suffix of the other, switching at most once.
    for (const double g : child.genes) CHECK((g == 0.1 || g == 0.9));
    CHECK((child.genes[0] == child.genes[1] || child.genes[1] == child.genes[2]));
  }
}

TEST_CASE("crossover of identical parents reproduces them") {
  GaConfig cfg = table_config();
  cfg.psize = 3;
  cfg.npar = 2;
  const Population parents{chrom({0.2, 0.8}, 0.3), chrom({0.2, 0.8}, 0.3)};
  Rng rng(5);
  const Population children = crossover(parents, cfg, rng);
  REQUIRE(children.size() == 1);
  CHECK(children[0].genes == std::vector<double>{0.2, 0.8});
}

TEST_CASE("single-gene crossover copies one parent") {
  GaConfig cfg = table_config();
  cfg.psize = 4;
  cfg.npar = 1;
  const Population parents{chrom({0.25}, 0.1), chrom({0.75}, 0.2)};
  Rng rng(11);
  const Population children = crossover(parents, cfg, rng);
  REQUIRE(children.size() == 2);
  for (const auto& child : children) {
    CHECK((child.genes[0] == 0.25 || child.genes[0] == 0.75));
    CHECK_FALSE(child.fitness.has_value());
  }
}

TEST_CASE("crossover requires two parents and stops at psize") {
  GaConfig cfg = table_config();
  cfg.psize = 3;
  Rng rng(2);
  const Population lone{chrom({0.5}, 0.1)};
  CHECK_THROWS_AS(crossover(lone, cfg, rng), std::invalid_argument);
  const Population full{chrom({0.1}, 0.1), chrom({0.2}, 0.2), chrom({0.3}, 0.3)};
  CHECK(crossover(full, cfg, rng).empty());
}

TEST_CASE("mutate at rate 0 leaves the population alone") {
  GaConfig cfg = table_config();
  cfg.mrate = 0.0;
  cfg.npar = 2;
  Population pop{chrom({0.1, 0.2}, 0.5), chrom({0.3, 0.4}, 0.6)};
  const Population before = pop;
  Rng rng(3);
  mutate(pop, cfg, rng);
  REQUIRE(pop.size() == before.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    CHECK(pop[i].genes == before[i].genes);
    CHECK(pop[i].fitness == before[i].fitness);
  }
}

TEST_CASE("mutate at rate 1 redraws every slot except the elite") {
  GaConfig cfg = table_config();
  cfg.mrate = 1.0;
  cfg.npar = 2;
  // Plant genes outside [lower, upper) so a redraw is always visible.
  Population pop{chrom({5.0, 5.0}, 0.5), chrom({5.0, 5.0}, 0.2), chrom({5.0, 5.0}, 0.9)};
  Rng rng(4);
  mutate(pop, cfg, rng);
  CHECK(pop[1].genes == std::vector<double>{5.0, 5.0});
  CHECK(pop[1].fitness == 0.2);
  for (const std::size_t i : {std::size_t{0}, std::size_t{2}}) {
    CHECK_FALSE(pop[i].fitness.has_value());
    for (const double g : pop[i].genes) {
      CHECK(g >= 0.0);
      CHECK(g < 1.0);
    }
  }
}

TEST_CASE("mutate exempts nothing until a fitness exists") {
  GaConfig cfg = table_config();
  cfg.mrate = 1.0;
  cfg.npar = 1;
  Population pop{chrom({5.0}), chrom({5.0})};
  Rng rng(6);
  mutate(pop, cfg, rng);
  for (const auto& chromosome : pop) {
    CHECK(chromosome.genes[0] < 1.0);
  }
}

TEST_CASE("mutate validates gene counts") {
  GaConfig cfg = table_config();
  cfg.npar = 2;
  Population pop{chrom({0.5}, 0.1)};
  Rng rng(8);
  CHECK_THROWS_AS(mutate(pop, cfg, rng), std::invalid_argument);
}

TEST_CASE("optimize is bit-identical across reruns") {
  const GaConfig cfg = table_config();
  const GaResult a = optimize(cfg, first_gene);
  const GaResult b = optimize(cfg, first_gene);
  CHECK(a.best.lambdas() == b.best.lambdas());
  CHECK(a.best_fitness == b.best_fitness);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].generation == b.trace[i].generation);
    CHECK(a.trace[i].best_fitness == b.trace[i].best_fitness);
    CHECK(a.trace[i].mean_fitness == b.trace[i].mean_fitness);
    CHECK(a.trace[i].best_genes == b.trace[i].best_genes);
  }
}

TEST_CASE("optimize responds to the seed") {
  GaConfig cfg = table_config();
  const GaResult a = optimize(cfg, first_gene);
  cfg.seed = 43;
  const GaResult b = optimize(cfg, first_gene);
  CHECK(a.trace[0].best_fitness != b.trace[0].best_fitness);
}

TEST_CASE("optimize stays within the evaluation budget") {
  const GaConfig cfg = table_config();
  int evaluations = 0;
  const FitnessFunction counting = [&](std::span<const double> genes) {
    ++evaluations;
    for (const double g : genes) {
      CHECK(g >= 0.0);
      CHECK(g <= 1.0);
    }
    return genes[0];
  };
  const GaResult result = optimize(cfg, counting);
  CHECK(evaluations <= cfg.psize * (cfg.ngen + 1));
  CHECK(result.trace.size() == static_cast<std::size_t>(cfg.ngen) + 1);
}

TEST_CASE("optimize traces never regress") {
  const GaConfig cfg = table_config();
  const GaResult result = optimize(cfg, first_gene);
  for (std::size_t i = 1; i < result.trace.size(); ++i) {
    CHECK(result.trace[i].best_fitness <= result.trace[i - 1].best_fitness);
    CHECK(result.trace[i].best_fitness <= result.trace[i].mean_fitness);
  }
  CHECK(result.best_fitness == result.trace.back().best_fitness);
  CHECK(result.best.lambdas() == result.trace.back().best_genes);
  // Minimizing the first gene: twenty generations get close to 0.
  CHECK(result.best_fitness <= result.trace[0].best_fitness);
  CHECK(result.best_fitness < 0.2);
}

TEST_CASE("optimize handles several genes") {
  GaConfig cfg = table_config();
  cfg.npar = 3;
  const FitnessFunction bowl = [](std::span<const double> genes) {
    double sum = 0.0;
    for (const double g : genes) sum += (g - 0.5) * (g - 0.5);
    return sum;
  };
  const GaResult result = optimize(cfg, bowl);
  CHECK(result.best.lambdas().size() == 3);
  CHECK(result.best_fitness < 0.1);
  for (std::size_t i = 1; i < result.trace.size(); ++i) {
    CHECK(result.trace[i].best_fitness <= result.trace[i - 1].best_fitness);
  }
}

TEST_CASE("optimize on a constant objective returns it unchanged") {
  const GaConfig cfg = table_config();
  const GaResult result = optimize(cfg, [](std::span<const double>) { return 0.75; });
  CHECK(result.best_fitness == 0.75);
  for (const auto& entry : result.trace) {
    CHECK(entry.best_fitness == 0.75);
    CHECK(entry.mean_fitness == 0.75);
  }
}

TEST_CASE("optimize rejects unusable configurations") {
  GaConfig cfg = table_config();
  cfg.lower = -0.25;
  CHECK_THROWS_AS(optimize(cfg, first_gene), config_error);
  cfg = table_config();
  cfg.upper = 1.5;
  CHECK_THROWS_AS(optimize(cfg, first_gene), config_error);
  cfg = table_config();
  cfg.srate = 0.05;
  CHECK_THROWS_AS(optimize(cfg, first_gene), config_error);
  cfg = table_config();
  CHECK_THROWS_AS(optimize(cfg, FitnessFunction{}), std::invalid_argument);
  CHECK_THROWS_AS(optimize(cfg, [](std::span<const double>) { return std::nan(""); }),
                  std::invalid_argument);
}

}
