#pragma once

#include <cstddef>
#include <vector>

#include "ganed/alphabet.hpp"

namespace ganed {

/// A numeric time series: at least one value, all finite.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// Piecewise aggregate approximation of a series: N segment means plus the
/// source length (needed later for distance scaling).
struct PaaVector {
  std::vector<double> means;
  std::size_t source_length = 0;
};

/// Sorted Gaussian quantile boundaries beta_1 < ... < beta_{alpha-1}
/// splitting N(0,1) into alpha equiprobable regions. Symmetric about 0.
class Breakpoints {
 public:
  Breakpoints(std::vector<double> betas, int alphabet_size);

  const std::vector<double>& betas() const { return betas_; }
  int alphabet_size() const { return alphabet_size_; }

 private:
  std::vector<double> betas_;
  int alphabet_size_;
};

/// Inverse standard normal CDF for p in (0,1). Rational approximation
/// polished by one Halley step; absolute error well under 1e-9.
double normal_quantile(double p);

/// Shifts and scales to mean 0 and population standard deviation 1.
/// Near-constant input (sigma < 1e-8) maps to all zeros.
TimeSeries znormalize(const TimeSeries& ts);

/// Reduces `ts` to N segment means. Segment i covers the real interval
/// [i*n/N, (i+1)*n/N); samples contribute to a segment in proportion to
/// their overlap with it, so non-divisible lengths degrade gracefully and
/// divisible ones reduce to plain window means. Requires 1 <= N <= n.
PaaVector paa(const TimeSeries& ts, std::size_t segments);

/// Breakpoints of the alpha equiprobable N(0,1) regions, 2 <= alpha <= 64.
const Breakpoints& gaussian_breakpoints(int alpha);

/// Maps each mean to the count of breakpoints <= value, so a value exactly
/// on a breakpoint joins the upper region. Output length equals the number
/// of means; output alphabet size equals breakpoints.alphabet_size().
SymbolicSequence discretize(const PaaVector& paa, const Breakpoints& breakpoints);

/// znormalize + paa + discretize against gaussian_breakpoints(alpha).
SymbolicSequence sax_transform(const TimeSeries& ts, std::size_t segments, int alpha);

}  // namespace ganed
