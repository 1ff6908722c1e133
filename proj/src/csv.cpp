#include "gqm/csv.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gqm {

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& columns)
    : out_(path, std::ios::binary), n_cols_(columns.size()) {
  if (!out_) throw std::invalid_argument("cannot open output file: " + path);
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) out_ << ',';
    out_ << columns[i];
  }
  out_ << '\n';
}

void CsvWriter::row(std::span<const double> values) {
  if (values.size() != n_cols_) {
    throw std::invalid_argument("CSV row width does not match header");
  }
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    out_ << format_value(values[i]);
  }
  out_ << '\n';
}

void CsvWriter::close() {
  out_.close();
  if (!out_) throw std::runtime_error("CSV write failed");
}

}  // namespace gqm
