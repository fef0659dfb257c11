#include <vector>

#include "doctest.h"
#include "ganed/classify.hpp"
#include "ganed/distances.hpp"

using namespace ganed;

namespace {

const Alphabet kBinary = Alphabet::from_glyphs("ab");

LabeledDataset dataset(std::vector<std::pair<int, std::string>> rows) {
  LabeledDataset ds;
  ds.name = "toy";
  for (auto& [label, word] : rows) ds.items.push_back({label, make_sequence(word, kBinary)});
  return ds;
}

double ed(const SymbolicSequence& x, const SymbolicSequence& y) { return edit_distance(x, y); }

}  // namespace

TEST_SUITE("classify") {

TEST_CASE("nn1 picks the closest reference") {
  const LabeledDataset refs = dataset({{1, "aaaa"}, {2, "abbb"}, {2, "bbbb"}});
  const Neighbor n = nn1(make_sequence("abbb", kBinary), refs, ed);
  CHECK(n.index == 1);
  CHECK(n.label == 2);
  CHECK(n.distance == 0.0);
}

TEST_CASE("nn1 breaks ties by the smallest index") {
  const LabeledDataset refs = dataset({{1, "aa"}, {2, "ab"}, {2, "aa"}});
  const Neighbor n = nn1(make_sequence("aa", kBinary), refs, ed);
  CHECK(n.index == 0);
  CHECK(n.label == 1);
  const Neighbor far = nn1(make_sequence("bb", kBinary), refs, ed);
  // aa and ab are both one edit from bb only through ab; distances are
  // aa->2, ab->1, aa->2.
  CHECK(far.index == 1);
  CHECK(far.label == 2);
}

TEST_CASE("nn1 requires references") {
  const LabeledDataset empty;
  CHECK_THROWS_AS(nn1(make_sequence("a", kBinary), empty, ed), std::invalid_argument);
}

TEST_CASE("leave-one-out error on a worked example") {
  // Each item against the other three: items 1 and 2 land on the wrong
  // side (2's 1-edit tie resolves to item 1), items 0 and 3 are correct.
  const LabeledDataset ds = dataset({{1, "aaaa"}, {1, "aabb"}, {2, "abbb"}, {2, "bbbb"}});
  const ErrorRate err = loocv_error(ds, ed);
  CHECK(err.misclassified == 2);
  CHECK(err.total == 4);
  CHECK(err.value() == 0.5);
}

TEST_CASE("leave-one-out on a clean split is exact") {
  const LabeledDataset ds = dataset({{1, "aaaa"}, {1, "aaab"}, {2, "bbbb"}, {2, "abbb"}});
  const ErrorRate err = loocv_error(ds, ed);
  CHECK(err.misclassified == 0);
  CHECK(err.total == 4);
  CHECK(err.value() == 0.0);
}

TEST_CASE("leave-one-out needs two items") {
  CHECK_THROWS_AS(loocv_error(dataset({{1, "a"}}), ed), std::invalid_argument);
}

TEST_CASE("holdout error on a worked example") {
  // bbaa sits two edits from both references; the tie falls to index 0
  // and mislabels it.
  const LabeledDataset train = dataset({{1, "aaaa"}, {2, "bbbb"}});
  const LabeledDataset test = dataset({{1, "aaab"}, {2, "abbb"}, {2, "bbaa"}});
  const ErrorRate err = holdout_error(train, test, ed);
  CHECK(err.misclassified == 1);
  CHECK(err.total == 3);
}

TEST_CASE("holdout requires nonempty splits") {
  const LabeledDataset some = dataset({{1, "a"}});
  const LabeledDataset empty;
  CHECK_THROWS_AS(holdout_error(empty, some, ed), std::invalid_argument);
  CHECK_THROWS_AS(holdout_error(some, empty, ed), std::invalid_argument);
}

TEST_CASE("error rate arithmetic") {
  CHECK(ErrorRate{1, 8}.value() == 0.125);
  CHECK(ErrorRate{0, 0}.value() == 0.0);
}

}
