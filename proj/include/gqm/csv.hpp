#pragma once

#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace gqm {

/// 12-significant-digit decimal rendering ("nan" for missing values).
std::string format_value(double v);

/// CSV with a fixed column order, comma separator, LF line endings.
/// Output is byte-stable across runs for identical inputs.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns);
  void row(std::span<const double> values);
  void close();

 private:
  std::ofstream out_;
  size_t n_cols_ = 0;
};

}  // namespace gqm
