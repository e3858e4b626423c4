#include "qmeter/result_table.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qmeter {

std::string format_double(double value) {
  // Round-trip exact and locale-independent; %.17g is exact for doubles,
  // shorter representations are preferred when they round-trip.
  char buf[64];
  for (int precision : {15, 16, 17}) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    double parsed = 0.0;
    std::sscanf(buf, "%lf", &parsed);
    if (parsed == value) break;
  }
  return buf;
}

ResultTable::ResultTable(std::vector<std::string> names, std::vector<std::string> units)
    : names_(std::move(names)), units_(std::move(units)) {
  if (names_.empty() || names_.size() != units_.size()) {
    throw std::invalid_argument("ResultTable: column names and units must match and be non-empty");
  }
}

void ResultTable::add_row(const std::vector<double>& row) {
  if (row.size() != names_.size()) {
    throw std::invalid_argument("ResultTable: row width does not match column count");
  }
  rows_.push_back(row);
}

void ResultTable::add_footer(const std::string& key, const std::string& value) {
  footer_.emplace_back(key, value);
}

std::string ResultTable::to_csv() const {
  std::ostringstream out;
  for (size_t i = 0; i < names_.size(); ++i) {
    out << (i ? "," : "") << names_[i];
  }
  out << "\n";
  for (size_t i = 0; i < units_.size(); ++i) {
    out << (i ? "," : "") << units_[i];
  }
  out << "\n";
  for (const auto& row : rows_) {
    for (size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_double(row[i]);
    }
    out << "\n";
  }
  for (const auto& [key, value] : footer_) {
    out << "# " << key << "=" << value << "\n";
  }
  return out.str();
}

std::string ResultTable::to_json() const {
  std::ostringstream out;
  out << "{\n  \"columns\": [";
  for (size_t i = 0; i < names_.size(); ++i) {
    out << (i ? ", " : "") << "{\"name\": \"" << names_[i] << "\", \"unit\": \"" << units_[i]
        << "\"}";
  }
  out << "],\n  \"rows\": [";
  for (size_t r = 0; r < rows_.size(); ++r) {
    out << (r ? ",\n    " : "\n    ") << "[";
    for (size_t i = 0; i < rows_[r].size(); ++i) {
      out << (i ? ", " : "") << format_double(rows_[r][i]);
    }
    out << "]";
  }
  out << (rows_.empty() ? "]" : "\n  ]") << ",\n  \"provenance\": {";
  for (size_t i = 0; i < footer_.size(); ++i) {
    out << (i ? ", " : "") << "\"" << footer_[i].first << "\": \"" << footer_[i].second << "\"";
  }
  out << "}\n}\n";
  return out.str();
}

}  // namespace qmeter
