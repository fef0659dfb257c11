#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "ganed/alphabet.hpp"

namespace ganed {

/// Class-labeled symbolic sequences, in a stable order.
struct LabeledDataset {
  struct Item {
    int label;
    SymbolicSequence sequence;
  };

  std::string name;
  std::vector<Item> items;
};

/// Any deterministic nonnegative distance between two sequences.
using DistanceFunction = std::function<double(const SymbolicSequence&, const SymbolicSequence&)>;

struct Neighbor {
  int label;
  std::size_t index;
  double distance;
};

/// An exact classification error: misclassified / total, with the integers
/// kept for exact checking.
struct ErrorRate {
  std::size_t misclassified = 0;
  std::size_t total = 0;

  double value() const { return total == 0 ? 0.0 : static_cast<double>(misclassified) / static_cast<double>(total); }
};

/// The reference at minimal distance from `query`; ties go to the
/// smallest index. Throws std::invalid_argument on empty references.
Neighbor nn1(const SymbolicSequence& query, const LabeledDataset& refs,
             const DistanceFunction& dist);

/// Leave-one-out error: each item is classified against all other items
/// with the 1-NN rule. Needs at least 2 items.
ErrorRate loocv_error(const LabeledDataset& ds, const DistanceFunction& dist);

/// Each test item classified against the full training set with the 1-NN
/// rule. Both splits must be nonempty.
ErrorRate holdout_error(const LabeledDataset& train, const LabeledDataset& test,
                        const DistanceFunction& dist);

}  // namespace ganed
