#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace qnet {

enum class TableFormat { kCsv, kJson };

/// Rectangular result table rendered either as CSV or as a JSON array of
/// objects keyed by the column names.
class Table {
 public:
  using Cell = std::variant<std::string, long long, double>;

  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  /// Throws std::invalid_argument if the row width does not match.
  void add_row(std::vector<Cell> row);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  void write(std::ostream& out, TableFormat format) const;
  std::string to_string(TableFormat format) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// Shortest decimal text that round-trips; deterministic across runs.
std::string format_real(double x);

}  // namespace qnet
