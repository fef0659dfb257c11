#include "ganed/classify.hpp"

#include <limits>
#include <stdexcept>

namespace ganed {

namespace {

// Shared 1-NN scan; `skip` excludes one reference index (for LOOCV) and is
// ignored when set past the end. Strict improvement keeps the smallest
// index on ties.
Neighbor nearest(const SymbolicSequence& query, const LabeledDataset& refs,
                 const DistanceFunction& dist, std::size_t skip) {
  Neighbor best{0, 0, std::numeric_limits<double>::infinity()};
  bool found = false;
  for (std::size_t i = 0; i < refs.items.size(); ++i) {
    if (i == skip) continue;
    const double d = dist(query, refs.items[i].sequence);
    if (!found || d < best.distance) {
      best = Neighbor{refs.items[i].label, i, d};
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("nn1 requires a nonempty reference set");
  return best;
}

constexpr std::size_t kNoSkip = static_cast<std::size_t>(-1);

}  // namespace

Neighbor nn1(const SymbolicSequence& query, const LabeledDataset& refs,
             const DistanceFunction& dist) {
  return nearest(query, refs, dist, kNoSkip);
}

ErrorRate loocv_error(const LabeledDataset& ds, const DistanceFunction& dist) {
  if (ds.items.size() < 2)
    throw std::invalid_argument("leave-one-out needs at least 2 items");
  ErrorRate error{0, ds.items.size()};
  for (std::size_t i = 0; i < ds.items.size(); ++i) {
    const Neighbor hit = nearest(ds.items[i].sequence, ds, dist, i);
    if (hit.label != ds.items[i].label) ++error.misclassified;
  }
  return error;
}

ErrorRate holdout_error(const LabeledDataset& train, const LabeledDataset& test,
                        const DistanceFunction& dist) {
  if (train.items.empty() || test.items.empty())
    throw std::invalid_argument("holdout needs nonempty train and test splits");
  ErrorRate error{0, test.items.size()};
  for (const auto& item : test.items) {
    const Neighbor hit = nearest(item.sequence, train, dist, kNoSkip);
    if (hit.label != item.label) ++error.misclassified;
  }
  return error;
}

}  // namespace ganed
