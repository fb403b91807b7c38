#pragma once

#include <string>
#include <vector>

namespace billiards {

/// Shortest-stable decimal form with 17 significant digits ("%.17g").
std::string fmt17(double v);

/// Minimal CSV table: one header row, data rows, '#' comment lines.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> comments;

  std::string to_string() const;
  static CsvTable parse(const std::string& text);

  /// Column index by name; throws DomainError when absent.
  std::size_t column(const std::string& name) const;
};

/// Writes content to path via a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace billiards
