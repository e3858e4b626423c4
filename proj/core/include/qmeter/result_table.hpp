#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qmeter {

/// Rectangular numeric table with a units sub-header and a provenance
/// footer. Serialization is deterministic: identical tables produce
/// byte-identical CSV/JSON.
class ResultTable {
 public:
  ResultTable() = default;
  ResultTable(std::vector<std::string> names, std::vector<std::string> units);

  void add_row(const std::vector<double>& row);
  void add_footer(const std::string& key, const std::string& value);

  int column_count() const { return static_cast<int>(names_.size()); }
  int row_count() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::string>& units() const { return units_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& footer() const { return footer_; }

  /// Header row, units row, data rows, then '#'-prefixed footer lines.
  std::string to_csv() const;
  std::string to_json() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::string> units_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::pair<std::string, std::string>> footer_;
};

/// Shortest round-trip-exact decimal representation of a double.
std::string format_double(double value);

}  // namespace qmeter
