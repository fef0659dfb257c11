#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ganed/sax.hpp"

namespace ganed {

/// Class-labeled raw time series, in file order.
struct SeriesDataset {
  struct Item {
    int label;
    TimeSeries series;
  };

  std::string name;
  std::vector<Item> items;
};

/// Reads the UCR text format: one series per line, the first field an
/// integer class label, the remaining fields real samples, fields split by
/// commas and/or whitespace. Rows may differ in length; blank lines are
/// skipped. The dataset name is the file stem minus any _TRAIN/_TEST
/// suffix. Throws data_error, naming file and line, for unreadable files,
/// non-numeric or non-finite fields, non-integer labels, sample-free lines
/// and series-free files.
SeriesDataset load_ucr(const std::filesystem::path& path);

}  // namespace ganed
