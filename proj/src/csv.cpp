#include "fracheat/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fracheat/errors.hpp"
#include "fracheat/numeric.hpp"

namespace fracheat {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw PreconditionError("csv: header must not be empty");
}

CsvTable& CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw PreconditionError("csv: row width does not match header");
  rows_.push_back(std::move(cells));
  return *this;
}

namespace {

void join(std::ostringstream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string CsvTable::str() const {
  std::ostringstream out;
  join(out, header_);
  for (const auto& r : rows_) join(out, r);
  return out.str();
}

void CsvTable::write(const std::string& path) const { write_text(path, str()); }

CsvTable CsvTable::read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw PreconditionError("csv: missing header in " + path);
  CsvTable table(split_line(line));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    table.add_row(split_line(line));
  }
  return table;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw PreconditionError("failed writing " + path);
}

}  // namespace fracheat
