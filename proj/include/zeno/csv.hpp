#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zeno/analysis.hpp"

namespace zeno {

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Writes `# key=value` lines, a column header row, then comma-separated
/// rows. Numbers are printed with 17 significant digits.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const Metadata& meta, const std::vector<std::string>& columns);

  void row(std::span<const double> values);
  void row(const std::vector<std::string>& cells);
  void close();

  static std::string cell(double x);

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
};

/// time,entropy,norm_error
void write_series(const std::filesystem::path& path, const Metadata& meta, const EETimeSeries& series);

/// Reads a file written by write_series; header metadata lands in
/// series.metadata and lambda, V, J are taken from it when present.
EETimeSeries read_series(const std::filesystem::path& path);

}  // namespace zeno
