#include "qnet/table.hpp"

#include <charconv>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qnet {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw std::invalid_argument("table row width mismatch");
  rows_.push_back(std::move(row));
}

std::string format_real(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

std::string cell_text(const Table::Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return format_real(std::get<double>(c));
}

}  // namespace

void Table::write(std::ostream& out, TableFormat format) const {
  if (format == TableFormat::kCsv) {
    for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
    out << '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
      out << '\n';
    }
    return;
  }
  // Rows are emitted one per line; numbers keep their CSV spelling.
  out << "[";
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    out << (r ? ",\n " : "\n ") << "{";
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      out << (i ? ", " : "") << nlohmann::json(columns_[i]).dump() << ": ";
      const auto& c = rows_[r][i];
      if (const auto* s = std::get_if<std::string>(&c)) {
        out << nlohmann::json(*s).dump();
      } else {
        out << cell_text(c);
      }
    }
    out << "}";
  }
  out << (rows_.empty() ? "]\n" : "\n]\n");
}

std::string Table::to_string(TableFormat format) const {
  std::ostringstream out;
  write(out, format);
  return out.str();
}

}  // namespace qnet
