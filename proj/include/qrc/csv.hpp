#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace qrc {

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

/// Appends complete rows; each row is written with a single write and flushed,
/// so an abort never leaves a torn line behind.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  void row(const std::vector<std::string>& fields);

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace qrc
