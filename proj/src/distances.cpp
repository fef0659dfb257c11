#include "ganed/distances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ganed {

namespace {

void check_costs(const EditCosts& costs) {
  if (costs.delete_cost < 0 || costs.insert_cost < 0 || costs.substitute_cost < 0)
    throw std::invalid_argument("edit costs must be nonnegative");
}

void check_shared_alphabet(const SymbolicSequence& s, const SymbolicSequence& t) {
  if (s.alphabet() != t.alphabet())
    throw std::invalid_argument("sequences must share an alphabet");
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

FrequencyFactors::FrequencyFactors(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
  if (lambdas_.empty()) throw std::invalid_argument("frequency factors need at least one lambda");
  for (double l : lambdas_) {
    if (!(l >= 0.0 && l <= 1.0))
      throw std::invalid_argument("frequency factors must lie in [0, 1]");
  }
}

double edit_distance(const SymbolicSequence& s, const SymbolicSequence& t,
                     const EditCosts& costs) {
  check_costs(costs);
  check_shared_alphabet(s, t);

  const std::size_t n = s.size();
  const std::size_t m = t.size();
  // Two-row table: prev holds distances for the previous prefix of s.
  std::vector<double> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<double>(j) * costs.insert_cost;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = static_cast<double>(i) * costs.delete_cost;
    for (std::size_t j = 1; j <= m; ++j) {
      const double sub = s[i - 1] == t[j - 1] ? 0.0 : costs.substitute_cost;
      cur[j] = std::min({prev[j] + costs.delete_cost, cur[j - 1] + costs.insert_cost,
                         prev[j - 1] + sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

std::vector<std::vector<double>> edit_distance_matrix(const SymbolicSequence& s,
                                                      const SymbolicSequence& t,
                                                      const EditCosts& costs) {
  check_costs(costs);
  check_shared_alphabet(s, t);

  const std::size_t n = s.size();
  const std::size_t m = t.size();
  std::vector<std::vector<double>> table(n + 1, std::vector<double>(m + 1, 0.0));
  for (std::size_t j = 0; j <= m; ++j) table[0][j] = static_cast<double>(j) * costs.insert_cost;
  for (std::size_t i = 1; i <= n; ++i) {
    table[i][0] = static_cast<double>(i) * costs.delete_cost;
    for (std::size_t j = 1; j <= m; ++j) {
      const double sub = s[i - 1] == t[j - 1] ? 0.0 : costs.substitute_cost;
      table[i][j] = std::min({table[i - 1][j] + costs.delete_cost,
                              table[i][j - 1] + costs.insert_cost, table[i - 1][j - 1] + sub});
    }
  }
  return table;
}

double ned(const SymbolicSequence& s, const SymbolicSequence& t, const EditCosts& costs) {
  check_costs(costs);
  check_shared_alphabet(s, t);

  const std::size_t n = s.size();
  const std::size_t m = t.size();
  if (n == 0 && m == 0) return 0.0;  // no path steps exist; 0 by convention

  // Layered path-length DP. layer[i][j] after round L is the minimum
  // weight of an editing path of exactly L unit steps from (0,0) to (i,j).
  // Layer L depends only on layer L-1, and the answer minimizes
  // weight / L over L in [max(n,m), n+m].
  const std::size_t cols = m + 1;
  std::vector<double> prev((n + 1) * cols, kInf), cur((n + 1) * cols, kInf);
  prev[0] = 0.0;
  double best = kInf;
  const std::size_t min_len = std::max(n, m);
  for (std::size_t steps = 1; steps <= n + m; ++steps) {
    std::fill(cur.begin(), cur.end(), kInf);
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j <= m; ++j) {
        // Reachability window for exactly `steps` unit steps.
        if (i + j < steps || std::max(i, j) > steps) continue;
        double w = kInf;
        if (i >= 1) w = std::min(w, prev[(i - 1) * cols + j] + costs.delete_cost);
        if (j >= 1) w = std::min(w, prev[i * cols + (j - 1)] + costs.insert_cost);
        if (i >= 1 && j >= 1) {
          const double sub = s[i - 1] == t[j - 1] ? 0.0 : costs.substitute_cost;
          w = std::min(w, prev[(i - 1) * cols + (j - 1)] + sub);
        }
        cur[i * cols + j] = w;
      }
    }
    if (steps >= min_len && cur[n * cols + m] < kInf)
      best = std::min(best, cur[n * cols + m] / static_cast<double>(steps));
    std::swap(prev, cur);
  }
  return best;
}

namespace detail {

double ganed_phi(std::span<const double> lambdas, std::span<const std::uint64_t> overlaps,
                 std::size_t length_sum) {
  double phi = 0.0;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    const double n = static_cast<double>(k + 1);
    phi += 2.0 * lambdas[k] * (static_cast<double>(overlaps[k]) + (n - 1.0)) /
           (n * static_cast<double>(length_sum));
  }
  return phi;
}

double ganed_from_stats(double edit_dist, std::span<const double> lambdas,
                        std::span<const std::uint64_t> overlaps, std::size_t length_sum) {
  const double phi = ganed_phi(lambdas, overlaps, length_sum);
  const double clamped = std::min(std::max(phi, 0.0), 1.0);
  return edit_dist * (1.0 - clamped);
}

}  // namespace detail

namespace {

std::vector<std::uint64_t> pairwise_overlaps(const SymbolicSequence& s, const SymbolicSequence& t,
                                             int nmax, NGramCache* cache) {
  std::vector<std::uint64_t> overlaps(static_cast<std::size_t>(nmax));
  for (int n = 1; n <= nmax; ++n) {
    if (cache) {
      overlaps[n - 1] = overlap(cache->profile(s, n), cache->profile(t, n));
    } else {
      overlaps[n - 1] = overlap(ngram_profile(s, n), ngram_profile(t, n));
    }
  }
  return overlaps;
}

double ganed_impl(const SymbolicSequence& s, const SymbolicSequence& t,
                  const FrequencyFactors& factors, const EditCosts& costs, NGramCache* cache) {
  check_shared_alphabet(s, t);
  const std::size_t length_sum = s.size() + t.size();
  if (length_sum == 0) return 0.0;  // defined as 0 before the factor is formed

  const double ed = edit_distance(s, t, costs);
  const auto overlaps = pairwise_overlaps(s, t, factors.nmax(), cache);
  return detail::ganed_from_stats(ed, factors.lambdas(), overlaps, length_sum);
}

}  // namespace

double ganed(const SymbolicSequence& s, const SymbolicSequence& t,
             const FrequencyFactors& factors, const EditCosts& costs) {
  return ganed_impl(s, t, factors, costs, nullptr);
}

double ganed(const SymbolicSequence& s, const SymbolicSequence& t,
             const FrequencyFactors& factors, const EditCosts& costs, NGramCache& cache) {
  return ganed_impl(s, t, factors, costs, &cache);
}

double ganed_overlap_factor(const SymbolicSequence& s, const SymbolicSequence& t,
                            const FrequencyFactors& factors) {
  check_shared_alphabet(s, t);
  const std::size_t length_sum = s.size() + t.size();
  if (length_sum == 0) throw std::invalid_argument("overlap factor undefined for two empty strings");
  const auto overlaps = pairwise_overlaps(s, t, factors.nmax(), nullptr);
  return detail::ganed_phi(factors.lambdas(), overlaps, length_sum);
}

double mindist(const SymbolicSequence& s_hat, const SymbolicSequence& r_hat,
               std::size_t original_length, const Breakpoints& breakpoints) {
  if (s_hat.size() != r_hat.size())
    throw std::invalid_argument("mindist requires words of equal length");
  if (s_hat.empty()) throw std::invalid_argument("mindist requires nonempty words");
  if (s_hat.alphabet().size() != breakpoints.alphabet_size() ||
      r_hat.alphabet().size() != breakpoints.alphabet_size())
    throw std::invalid_argument("word alphabet size must match the breakpoint table");
  const std::size_t n = s_hat.size();
  if (original_length < n)
    throw std::invalid_argument("original length must be at least the word length");

  const auto& betas = breakpoints.betas();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Symbol a = s_hat[i];
    const Symbol b = r_hat[i];
    if (std::abs(a - b) <= 1) continue;  // adjacent regions contribute 0
    const Symbol hi = std::max(a, b);
    const Symbol lo = std::min(a, b);
    const double cell = betas[static_cast<std::size_t>(hi - 1)] - betas[static_cast<std::size_t>(lo)];
    sum += cell * cell;
  }
  return std::sqrt(static_cast<double>(original_length) / static_cast<double>(n)) * std::sqrt(sum);
}

}  // namespace ganed
