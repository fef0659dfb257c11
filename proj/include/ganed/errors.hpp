#pragma once

#include <stdexcept>
#include <string>

namespace ganed {

// Raised for malformed user-facing input: data files, glyph strings,
// result text. The CLI maps this to exit code 2.
struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised for invalid run configuration (flag combinations, parameter
// ranges resolved at config time). The CLI maps this to exit code 1.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ganed
