#pragma once

#include <stdexcept>
#include <string>

namespace qrc {

/// Malformed or out-of-range input data (level files, rules, model files).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical breakdown: divergent training, simulator round-off beyond tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qrc
