#include "edgeavg/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "edgeavg/errors.hpp"

namespace edgeavg {

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw SimulationError("number formatting failed");
  return std::string(buf, ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::append_row(const std::vector<double>& row) {
  if (row.size() != header_.size()) {
    throw SimulationError("csv row width does not match header");
  }
  rows_.push_back(row);
}

std::string CsvTable::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out += ',';
    out += header_[i];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

void CsvTable::write(const std::string& path) const {
  write_text_file(path, to_string());
}

ParsedCsv read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SimulationError("cannot open csv file '" + path + "'");
  ParsedCsv out;
  std::string line;
  if (!std::getline(in, line)) throw SimulationError("csv file '" + path + "' is empty");
  std::istringstream head(line);
  std::string cell;
  while (std::getline(head, cell, ',')) out.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream fields(line);
    while (std::getline(fields, cell, ',')) {
      double x = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
      if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw SimulationError("csv file '" + path + "' has a malformed number: " + cell);
      }
      row.push_back(x);
    }
    if (row.size() != out.header.size()) {
      throw SimulationError("csv file '" + path + "' has a ragged row");
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

void Summary::add(const std::string& key, double value) {
  entries_.emplace_back(key, format_double(value));
}

void Summary::add(const std::string& key, std::int64_t value) {
  entries_.emplace_back(key, std::to_string(value));
}

void Summary::add(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
}

std::string Summary::to_string() const {
  std::string out;
  for (const auto& [key, value] : entries_) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
  }
  return out;
}

void Summary::write(const std::string& path) const {
  write_text_file(path, to_string());
}

double Summary::value_of(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return std::stod(v);
  }
  throw SimulationError("summary key '" + key + "' not found");
}

void write_grid(const std::string& path, const std::vector<double>& values,
                std::int64_t w, std::int64_t h) {
  if (static_cast<std::int64_t>(values.size()) != w * h) {
    throw SimulationError("grid size does not match dimensions");
  }
  std::string out;
  for (std::int64_t r = 0; r < h; ++r) {
    for (std::int64_t c = 0; c < w; ++c) {
      if (c) out += ',';
      out += format_double(values[static_cast<std::size_t>(r * w + c)]);
    }
    out += '\n';
  }
  write_text_file(path, out);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SimulationError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw SimulationError("write to '" + path + "' failed");
}

}  // namespace edgeavg
