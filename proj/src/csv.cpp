#include "nagflow/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace nagflow {

std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::string& kind,
                     const std::vector<std::string>& columns)
    : out_(path), width_(columns.size()) {
  if (!out_) throw std::runtime_error("cannot open output file '" + path + "'");
  out_ << "# schema=1 kind=" << kind << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
  }
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != width_) throw std::logic_error("csv row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    out_ << format_full(values[i]) << (i + 1 < values.size() ? "," : "\n");
  }
}

void CsvWriter::row_raw(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::logic_error("csv row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
  }
}

void CsvWriter::close() { out_.close(); }

}  // namespace nagflow
