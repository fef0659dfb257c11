#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <vector>

#include "ganed/alphabet.hpp"

namespace ganed {

/// Sparse frequency profile of the contiguous length-n windows of a
/// sequence. Only grams that occur are stored; every stored count is >= 1
/// and the counts sum to max(|S| - n + 1, 0).
struct NGramProfile {
  using Gram = std::vector<Symbol>;

  int n = 1;
  std::map<Gram, std::uint32_t> counts;

  /// Sum of all counts.
  std::uint64_t total() const;
};

/// Counts every contiguous length-n window of `s`. Empty profile when
/// n > |s|. Throws std::invalid_argument for n < 1.
NGramProfile ngram_profile(const SymbolicSequence& s, int n);

/// Sum over all n-grams of min(count in p, count in q). Symmetric.
/// Throws std::invalid_argument if p.n != q.n.
std::uint64_t overlap(const NGramProfile& p, const NGramProfile& q);

/// Memoizes profiles by (sequence id, n). Safe for concurrent reads and
/// inserts; results are independent of evaluation order. Entries pin the
/// profiles for the cache's lifetime, so returned references stay valid.
class NGramCache {
 public:
  const NGramProfile& profile(const SymbolicSequence& s, int n);

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::pair<std::uint64_t, int>, std::unique_ptr<const NGramProfile>> entries_;
};

}  // namespace ganed
