#include "ganed/ngram.hpp"

#include <mutex>
#include <stdexcept>

namespace ganed {

std::uint64_t NGramProfile::total() const {
  std::uint64_t sum = 0;
  for (const auto& [gram, count] : counts) sum += count;
  return sum;
}

NGramProfile ngram_profile(const SymbolicSequence& s, int n) {
  if (n < 1) throw std::invalid_argument("n-gram length must be >= 1");
  NGramProfile profile;
  profile.n = n;
  const auto len = s.size();
  const auto width = static_cast<std::size_t>(n);
  if (width > len) return profile;
  for (std::size_t i = 0; i + width <= len; ++i) {
    NGramProfile::Gram gram(s.symbols().begin() + i, s.symbols().begin() + i + width);
    ++profile.counts[std::move(gram)];
  }
  return profile;
}

std::uint64_t overlap(const NGramProfile& p, const NGramProfile& q) {
  if (p.n != q.n) throw std::invalid_argument("overlap requires profiles of equal n");
  // Both maps are ordered by gram: merge-walk the shared keys.
  std::uint64_t sum = 0;
  auto pi = p.counts.begin();
  auto qi = q.counts.begin();
  while (pi != p.counts.end() && qi != q.counts.end()) {
    if (pi->first < qi->first) {
      ++pi;
    } else if (qi->first < pi->first) {
      ++qi;
    } else {
      sum += std::min(pi->second, qi->second);
      ++pi;
      ++qi;
    }
  }
  return sum;
}

const NGramProfile& NGramCache::profile(const SymbolicSequence& s, int n) {
  const std::pair<std::uint64_t, int> key{s.id(), n};
  {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end()) return *it->second;
  }
  auto computed = std::make_unique<const NGramProfile>(ngram_profile(s, n));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.emplace(key, std::move(computed));
  return *it->second;
}

}  // namespace ganed
