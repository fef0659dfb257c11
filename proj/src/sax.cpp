#include "ganed/sax.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace ganed {

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("time series must contain at least one value");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("time series values must be finite");
  }
}

Breakpoints::Breakpoints(std::vector<double> betas, int alphabet_size)
    : betas_(std::move(betas)), alphabet_size_(alphabet_size) {
  if (alphabet_size_ < 2) throw std::invalid_argument("breakpoints need alphabet size >= 2");
  if (betas_.size() != static_cast<std::size_t>(alphabet_size_ - 1))
    throw std::invalid_argument("breakpoints need exactly alphabet_size - 1 boundaries");
  for (std::size_t i = 1; i < betas_.size(); ++i) {
    if (!(betas_[i - 1] < betas_[i]))
      throw std::invalid_argument("breakpoints must be strictly increasing");
  }
  for (std::size_t i = 0; i < betas_.size(); ++i) {
    if (std::abs(betas_[i] + betas_[betas_.size() - 1 - i]) > 1e-9)
      throw std::invalid_argument("breakpoints must be symmetric about zero");
  }
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("quantile requires p in (0,1)");

  // Acklam's rational approximation in three regions.
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // One Halley step against the erfc-based CDF pushes the error from the
  // approximation's ~1e-9 down to near machine precision.
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
  x = x - u / (1.0 + x * u / 2.0);
  return x;
}

TimeSeries znormalize(const TimeSeries& ts) {
  const auto& v = ts.values();
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= n;  // population variance
  const double sigma = std::sqrt(var);

  std::vector<double> out(v.size());
  if (sigma < 1e-8) {
    std::fill(out.begin(), out.end(), 0.0);
  } else {
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - mean) / sigma;
  }
  return TimeSeries(std::move(out));
}

PaaVector paa(const TimeSeries& ts, std::size_t segments) {
  const std::size_t n = ts.size();
  if (segments < 1 || segments > n)
    throw std::invalid_argument("paa requires 1 <= segments <= series length");

  PaaVector result;
  result.source_length = n;
  result.means.resize(segments);
  const double width = static_cast<double>(n) / static_cast<double>(segments);
  for (std::size_t i = 0; i < segments; ++i) {
    const double start = static_cast<double>(i) * width;
    const double end = static_cast<double>(i + 1) * width;
    double weighted = 0.0;
    const auto first = static_cast<std::size_t>(start);
    for (std::size_t j = first; j < n && static_cast<double>(j) < end; ++j) {
      const double lo = std::max(start, static_cast<double>(j));
      const double hi = std::min(end, static_cast<double>(j + 1));
      if (hi > lo) weighted += ts[j] * (hi - lo);
    }
    result.means[i] = weighted / width;
  }
  return result;
}

const Breakpoints& gaussian_breakpoints(int alpha) {
  if (alpha < 2 || alpha > 64)
    throw std::invalid_argument("gaussian_breakpoints requires alpha in [2, 64]");

  // Read-mostly memo per alpha; quantiles for the lower half, mirrored for
  // exact symmetry.
  static std::mutex mutex;
  static std::map<int, Breakpoints> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(alpha);
  if (it != cache.end()) return it->second;

  std::vector<double> betas(static_cast<std::size_t>(alpha - 1));
  for (int i = 1; i <= alpha - 1; ++i) {
    if (2 * i == alpha) {
      betas[i - 1] = 0.0;
    } else if (2 * i < alpha) {
      betas[i - 1] = normal_quantile(static_cast<double>(i) / alpha);
    } else {
      betas[i - 1] = -betas[static_cast<std::size_t>(alpha - i - 1)];
    }
  }
  auto [pos, inserted] = cache.emplace(alpha, Breakpoints(std::move(betas), alpha));
  return pos->second;
}

SymbolicSequence discretize(const PaaVector& paa, const Breakpoints& breakpoints) {
  const auto& betas = breakpoints.betas();
  const int alpha = breakpoints.alphabet_size();
  std::vector<Symbol> symbols;
  symbols.reserve(paa.means.size());
  for (double v : paa.means) {
    // Count of breakpoints <= v: a value on a breakpoint takes the upper region.
    auto it = std::upper_bound(betas.begin(), betas.end(), v);
    symbols.push_back(static_cast<Symbol>(it - betas.begin()));
  }
  Alphabet alphabet = alpha <= 64 ? Alphabet::sax(alpha) : Alphabet::indexed(alpha);
  return SymbolicSequence(std::move(symbols), std::move(alphabet));
}

SymbolicSequence sax_transform(const TimeSeries& ts, std::size_t segments, int alpha) {
  return discretize(paa(znormalize(ts), segments), gaussian_breakpoints(alpha));
}

}  // namespace ganed
