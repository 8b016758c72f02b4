#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "nagflow/types.hpp"

namespace nagflow {

/// Full-precision scientific notation, 17 significant digits; the format used
/// for every CSV number so outputs are byte-reproducible.
std::string format_full(double x);

/// Minimal CSV emitter: a `# schema=1 kind=...` comment line, a header row,
/// then rows of full-precision numbers.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::string& kind,
            const std::vector<std::string>& columns);

  void row(const std::vector<double>& values);
  /// Row of preformatted cells (labels etc.).
  void row_raw(const std::vector<std::string>& cells);
  void close();

 private:
  std::ofstream out_;
  std::size_t width_;
};

}  // namespace nagflow
