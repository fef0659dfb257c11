#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ganed/alphabet.hpp"
#include "ganed/ngram.hpp"
#include "ganed/sax.hpp"

namespace ganed {

using DistanceValue = double;

/// Costs of the elementary edit operations. Matches cost 0, all others
/// nonnegative. Unit costs give the classical Levenshtein distance.
struct EditCosts {
  double delete_cost = 1.0;
  double insert_cost = 1.0;
  double substitute_cost = 1.0;
};

/// The frequency factors lambda_1..lambda_nMax weighting the n-gram
/// overlap terms of the ganed distance. Every factor lies in [0, 1].
class FrequencyFactors {
 public:
  explicit FrequencyFactors(std::vector<double> lambdas);

  const std::vector<double>& lambdas() const { return lambdas_; }
  int nmax() const { return static_cast<int>(lambdas_.size()); }

 private:
  std::vector<double> lambdas_;
};

/// Minimum total cost over all edit transformations of s into t.
/// Symmetric when delete_cost == insert_cost; 0 on identical inputs.
double edit_distance(const SymbolicSequence& s, const SymbolicSequence& t,
                     const EditCosts& costs = {});

/// The full (|s|+1) x (|t|+1) prefix-distance table; [i][j] is the cost of
/// transforming the first i symbols of s into the first j symbols of t.
std::vector<std::vector<double>> edit_distance_matrix(const SymbolicSequence& s,
                                                      const SymbolicSequence& t,
                                                      const EditCosts& costs = {});

/// Normalized edit distance: the minimum over editing paths P of
/// weight(P) / length(P). Defined on paths, not on edit operations, and
/// computed exactly by a path-length dynamic program. Two empty strings
/// give 0 by convention.
double ned(const SymbolicSequence& s, const SymbolicSequence& t, const EditCosts& costs = {});

/// Edit distance scaled by one minus a clamped, length-normalized n-gram
/// overlap score:
///
///   ganed(s,t) = ED(s,t) * (1 - clamp(phi, 0, 1))
///   phi        = sum_{n=1..nMax} 2*lambda_n*(overlap_n(s,t) + (n-1))
///                               / (n*(|s|+|t|))
///
/// Always in [0, ED(s,t)]; equals ED exactly when all factors are 0; two
/// empty strings give 0 before the factor is formed.
double ganed(const SymbolicSequence& s, const SymbolicSequence& t,
             const FrequencyFactors& factors, const EditCosts& costs = {});

/// As above, fetching n-gram profiles through `cache`. Results are
/// bit-identical to the uncached overload.
double ganed(const SymbolicSequence& s, const SymbolicSequence& t,
             const FrequencyFactors& factors, const EditCosts& costs, NGramCache& cache);

/// The unclamped overlap score phi of the ganed definition, exposed for
/// analysis. ganed itself clamps this to [0, 1].
double ganed_overlap_factor(const SymbolicSequence& s, const SymbolicSequence& t,
                            const FrequencyFactors& factors);

namespace detail {

/// Shared ganed arithmetic: unclamped phi from precomputed per-n overlaps
/// and the summed string lengths. Both ganed overloads and any
/// precomputed-statistics evaluator must funnel through this so their
/// results agree bit for bit.
double ganed_phi(std::span<const double> lambdas, std::span<const std::uint64_t> overlaps,
                 std::size_t length_sum);

/// ED scaled by the clamped factor.
double ganed_from_stats(double edit_dist, std::span<const double> lambdas,
                        std::span<const std::uint64_t> overlaps, std::size_t length_sum);

}  // namespace detail

/// Lower-bounding distance between two equal-length discretized words:
/// sqrt(original_length/N) * sqrt(sum of cell(s_i, r_i)^2), where the cell
/// of symbols a, b is 0 when |a-b| <= 1 and otherwise the breakpoint gap
/// beta_max(a,b) - beta_(min(a,b)+1).
double mindist(const SymbolicSequence& s_hat, const SymbolicSequence& r_hat,
               std::size_t original_length, const Breakpoints& breakpoints);

}  // namespace ganed
