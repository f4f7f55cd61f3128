#include "zeno/csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace zeno {

CsvWriter::CsvWriter(const std::filesystem::path& path, const Metadata& meta, const std::vector<std::string>& columns)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), columns_(columns.size()) {
  if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (const auto& [k, v] : meta) out_ << "# " << k << '=' << v << '\n';
  row(columns);
}

std::string CsvWriter::cell(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void CsvWriter::row(std::span<const double> values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double x : values) cells.push_back(cell(x));
  row(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw std::invalid_argument("row width does not match the header of " + path_.string());
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
}

void CsvWriter::close() {
  out_.close();
  if (!out_) throw std::runtime_error("failed writing " + path_.string());
}

void write_series(const std::filesystem::path& path, const Metadata& meta, const EETimeSeries& series) {
  series.validate();
  Metadata m = meta;
  m.emplace_back("entropy_base", "e");
  CsvWriter w(path, m, {"time", "entropy", "norm_error"});
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double ne = series.norm_errors.empty() ? 0.0 : series.norm_errors[i];
    const double r[3] = {series.times[i], series.entropies[i], ne};
    w.row(r);
  }
  w.close();
}

EETimeSeries read_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  EETimeSeries s;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.starts_with("#")) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      s.metadata.emplace_back(key, line.substr(eq + 1));
      continue;
    }
    if (!header_seen) {
      if (line != "time,entropy,norm_error") throw std::runtime_error(path.string() + " is not an entropy time series");
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    std::istringstream row(line);
    double t, e, n;
    char c1, c2;
    if (!(row >> t >> c1 >> e >> c2 >> n) || c1 != ',' || c2 != ',') throw std::runtime_error("bad row in " + path.string() + ": " + line);
    s.times.push_back(t);
    s.entropies.push_back(e);
    s.norm_errors.push_back(n);
  }
  if (!header_seen) throw std::runtime_error(path.string() + " has no column header");
  for (const auto& [k, v] : s.metadata) {
    if (k == "lambda") s.lambda = std::stod(v);
    else if (k == "V") s.V = std::stod(v);
    else if (k == "J") s.J = std::stod(v);
  }
  s.validate();
  return s;
}

}  // namespace zeno
