#pragma once

// CSV emission with a fixed column order, a header row, and locale
// independent number formatting ('.' decimal separator, shortest
// round-trip form). Identical data always produces identical bytes.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "curvecut/util.hpp"

namespace curvecut {

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  class RowBuilder {
   public:
    explicit RowBuilder(CsvTable& table) : table_(table) {}
    RowBuilder& cell(double v) {
      cells_.push_back(format_double(v));
      return *this;
    }
    RowBuilder& cell(long long v) {
      cells_.push_back(format_int(v));
      return *this;
    }
    RowBuilder& cell(int v) { return cell(static_cast<long long>(v)); }
    RowBuilder& cell(const std::string& v) {
      cells_.push_back(v);
      return *this;
    }
    ~RowBuilder() { table_.append(cells_); }

   private:
    CsvTable& table_;
    std::vector<std::string> cells_;
  };

  RowBuilder row() { return RowBuilder(*this); }

  void append(const std::vector<std::string>& cells) {
    if (cells.size() != columns_.size())
      throw std::invalid_argument("CSV row has " + std::to_string(cells.size()) +
                                  " cells, expected " + std::to_string(columns_.size()));
    rows_.push_back(cells);
  }

  std::string to_string() const {
    std::ostringstream out;
    write_line(out, columns_);
    for (const auto& r : rows_) write_line(out, r);
    return out.str();
  }

  void save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << to_string();
    if (!out) throw IoError("failed writing " + path);
  }

  size_t row_count() const { return rows_.size(); }

 private:
  static void write_line(std::ostringstream& out, const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace curvecut
