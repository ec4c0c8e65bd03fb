#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gasplan/errors.hpp"

namespace gasplan {

// Plain comma-separated tables with a mandatory header row. Cells are kept as
// strings; typed access converts on demand and reports the file/row/column on
// failure. Loaders are expected to pass the exact column set they understand
// so that stray columns fail loudly instead of being ignored.
class CsvTable {
  public:
    static CsvTable read_file(const std::string& path);
    static CsvTable from_string(const std::string& text, const std::string& name = "<string>");

    const std::vector<std::string>& headers() const { return headers_; }
    std::size_t row_count() const { return rows_.size(); }
    const std::string& source() const { return source_; }

    bool has_column(const std::string& name) const;
    // Throws SchemaError when the header set differs from required+optional.
    void require_columns(const std::vector<std::string>& required,
                         const std::vector<std::string>& optional = {}) const;

    // Typed accessors; row is 0-based over data rows.
    const std::string& cell(std::size_t row, const std::string& col) const;
    bool empty_cell(std::size_t row, const std::string& col) const;
    double number(std::size_t row, const std::string& col) const;
    double number_or(std::size_t row, const std::string& col, double fallback) const;
    long integer(std::size_t row, const std::string& col) const;
    bool flag(std::size_t row, const std::string& col) const;  // 0/1/true/false

    // 1-based data-row line number inside the file (header is line 1).
    std::size_t line_of(std::size_t row) const { return row + 2; }

  private:
    std::string source_;
    std::vector<std::string> headers_;
    std::vector<std::vector<std::string>> rows_;

    std::size_t column_index(std::size_t row, const std::string& col) const;
    [[noreturn]] void fail(std::size_t row, const std::string& col, const std::string& what) const;
};

// Minimal writer used for exports and reports. Values are written with
// round-trip precision so that re-reading reproduces the same doubles.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> headers) : headers_(std::move(headers)) {}
    void add_row(std::vector<std::string> cells);
    void write_file(const std::string& path) const;
    std::string to_string() const;

    static std::string format_number(double v);

  private:
    std::vector<std::string> headers_;
    std::vector<std::vector<std::string>> rows_;
};

// Flat key=value text file ('#' starts a comment line).
std::vector<std::pair<std::string, std::string>> read_key_value_file(const std::string& path);

}  // namespace gasplan
