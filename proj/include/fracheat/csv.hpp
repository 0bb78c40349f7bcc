#pragma once

#include <string>
#include <vector>

namespace fracheat {

/// Comma-separated table with a mandatory header row, '.' decimals and LF
/// line endings. Numbers go through format_double.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& add_row(std::vector<std::string> cells);
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::string str() const;
  void write(const std::string& path) const;

  /// Reads a table written by write(); throws PreconditionError on ragged rows.
  static CsvTable read(const std::string& path);

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes text to a file, throwing PreconditionError if it cannot be opened.
void write_text(const std::string& path, const std::string& text);

}  // namespace fracheat
