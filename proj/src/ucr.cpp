#include "ganed/ucr.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <string_view>
#include <utility>

#include "ganed/errors.hpp"

namespace ganed {
namespace {

bool is_separator(char c) {
  return c == ',' || c == ' ' || c == '\t' || c == '\r';
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_separator(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_separator(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

std::string at(const std::filesystem::path& path, std::size_t line_no) {
  return path.string() + ":" + std::to_string(line_no);
}

double parse_number(std::string_view field, const std::filesystem::path& path,
                    std::size_t line_no) {
  double value = 0.0;
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), last, value);
  if (ec != std::errc{} || ptr != last)
    throw data_error(at(path, line_no) + ": cannot parse field '" +
                     std::string(field) + "'");
  if (!std::isfinite(value))
    throw data_error(at(path, line_no) + ": non-finite value '" +
                     std::string(field) + "'");
  return value;
}

std::string dataset_name(const std::filesystem::path& path) {
  std::string stem = path.stem().string();
  for (std::string_view suffix : {"_TRAIN", "_TEST", "_train", "_test"}) {
    if (stem.size() > suffix.size() && stem.ends_with(suffix))
      return stem.substr(0, stem.size() - suffix.size());
  }
  return stem;
}

}  // namespace

SeriesDataset load_ucr(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open '" + path.string() + "'");

  SeriesDataset ds;
  ds.name = dataset_name(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() < 2)
      throw data_error(at(path, line_no) +
                       ": a series needs a label and at least one sample");

    const double label_value = parse_number(fields[0], path, line_no);
    const double rounded = std::nearbyint(label_value);
    if (std::abs(label_value - rounded) > 1e-6 ||
        std::abs(rounded) > 2147483647.0)
      throw data_error(at(path, line_no) + ": label '" +
                       std::string(fields[0]) + "' is not an integer");

    std::vector<double> values;
    values.reserve(fields.size() - 1);
    for (std::size_t f = 1; f < fields.size(); ++f)
      values.push_back(parse_number(fields[f], path, line_no));
    ds.items.push_back(
        {static_cast<int>(rounded), TimeSeries(std::move(values))});
  }
  if (ds.items.empty())
    throw data_error("'" + path.string() + "': no series found");
  return ds;
}

}  // namespace ganed
