#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace edgeavg {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double x);

// In-memory CSV: fixed header, rows of doubles, written atomically at the
// end so replica-parallel producers can fill rows by index.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void append_row(const std::vector<double>& row);
  std::size_t row_count() const { return rows_.size(); }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

  std::string to_string() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

// Parses a CSV produced by CsvTable; throws SimulationError on malformed
// input. Used by tests and downstream tooling.
struct ParsedCsv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
ParsedCsv read_csv(const std::string& path);

// Ordered key = value summary.
class Summary {
 public:
  void add(const std::string& key, double value);
  void add(const std::string& key, std::int64_t value);
  void add(const std::string& key, const std::string& value);

  std::string to_string() const;
  void write(const std::string& path) const;
  // Lookup for tests; throws SimulationError when missing.
  double value_of(const std::string& key) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// Plain-text grid, h rows of w comma-separated values, row-major.
void write_grid(const std::string& path, const std::vector<double>& values,
                std::int64_t w, std::int64_t h);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace edgeavg
