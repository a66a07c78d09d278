#pragma once

#include <string>
#include <vector>

namespace iir {

/// Comma-separated, header required, '.' decimal. Malformed rows raise
/// std::runtime_error naming the 1-based line number.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a header column; throws if absent.
  std::size_t column(const std::string& name) const;
  std::vector<double> column_values(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

/// Writes doubles with enough digits to round-trip exactly.
void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

std::string format_double(double v);

}  // namespace iir
