#include "gasplan/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gasplan {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

CsvTable parse(std::istream& in, const std::string& name, CsvTable& table,
               std::vector<std::string>& headers, std::vector<std::vector<std::string>>& rows) {
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto cells = split_line(line);
        if (!have_header) {
            headers = cells;
            have_header = true;
        } else {
            if (cells.size() != headers.size())
                throw SchemaError(name + ": row with " + std::to_string(cells.size()) +
                                  " cells, expected " + std::to_string(headers.size()));
            rows.push_back(std::move(cells));
        }
    }
    if (!have_header) throw SchemaError(name + ": missing header row");
    return table;
}

}  // namespace

CsvTable CsvTable::read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    CsvTable t;
    t.source_ = path;
    parse(in, path, t, t.headers_, t.rows_);
    return t;
}

CsvTable CsvTable::from_string(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    CsvTable t;
    t.source_ = name;
    parse(in, name, t, t.headers_, t.rows_);
    return t;
}

bool CsvTable::has_column(const std::string& name) const {
    return std::find(headers_.begin(), headers_.end(), name) != headers_.end();
}

void CsvTable::require_columns(const std::vector<std::string>& required,
                               const std::vector<std::string>& optional) const {
    for (const auto& c : required)
        if (!has_column(c)) throw SchemaError(source_ + ": missing column '" + c + "'");
    for (const auto& h : headers_) {
        bool known = std::find(required.begin(), required.end(), h) != required.end() ||
                     std::find(optional.begin(), optional.end(), h) != optional.end();
        if (!known) throw SchemaError(source_ + ": unknown column '" + h + "'");
    }
}

std::size_t CsvTable::column_index(std::size_t row, const std::string& col) const {
    auto it = std::find(headers_.begin(), headers_.end(), col);
    if (it == headers_.end()) fail(row, col, "no such column");
    return static_cast<std::size_t>(it - headers_.begin());
}

const std::string& CsvTable::cell(std::size_t row, const std::string& col) const {
    if (row >= rows_.size()) fail(row, col, "row out of range");
    return rows_[row][column_index(row, col)];
}

bool CsvTable::empty_cell(std::size_t row, const std::string& col) const {
    return cell(row, col).empty();
}

double CsvTable::number(std::size_t row, const std::string& col) const {
    const std::string& s = cell(row, col);
    if (s.empty()) fail(row, col, "empty numeric cell");
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) fail(row, col, "trailing characters in number '" + s + "'");
        return v;
    } catch (const std::invalid_argument&) {
        fail(row, col, "not a number: '" + s + "'");
    } catch (const std::out_of_range&) {
        fail(row, col, "number out of range: '" + s + "'");
    }
}

double CsvTable::number_or(std::size_t row, const std::string& col, double fallback) const {
    if (!has_column(col) || empty_cell(row, col)) return fallback;
    return number(row, col);
}

long CsvTable::integer(std::size_t row, const std::string& col) const {
    const std::string& s = cell(row, col);
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        fail(row, col, "not an integer: '" + s + "'");
    return v;
}

bool CsvTable::flag(std::size_t row, const std::string& col) const {
    const std::string& s = cell(row, col);
    if (s == "1" || s == "true") return true;
    if (s == "0" || s == "false") return false;
    fail(row, col, "not a flag (0/1/true/false): '" + s + "'");
}

void CsvTable::fail(std::size_t row, const std::string& col, const std::string& what) const {
    throw SchemaError(source_ + ":" + std::to_string(line_of(row)) + " column '" + col + "': " +
                      what);
}

void CsvWriter::add_row(std::vector<std::string> cells) {
    if (cells.size() != headers_.size())
        throw SchemaError("CsvWriter: row size mismatch");
    rows_.push_back(std::move(cells));
}

std::string CsvWriter::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < headers_.size(); ++i)
        out << (i ? "," : "") << headers_[i];
    out << "\n";
    for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
        out << "\n";
    }
    return out.str();
}

void CsvWriter::write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write " + path);
    out << to_string();
}

std::string CsvWriter::format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // Prefer the shortest representation that round-trips.
    for (int prec = 1; prec < 17; ++prec) {
        char probe[40];
        std::snprintf(probe, sizeof probe, "%.*g", prec, v);
        if (std::stod(probe) == v) return probe;
    }
    return buf;
}

std::vector<std::pair<std::string, std::string>> read_key_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw SchemaError(path + ":" + std::to_string(lineno) + ": expected key=value");
        out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return out;
}

}  // namespace gasplan
