#include "result_table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "error.hpp"

namespace sipkit {

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += quote(cells[i]);
  }
  return out;
}

// Splits one logical CSV record starting at `pos`; advances `pos`.
std::vector<std::string> read_record(const std::string& text, std::size_t& pos) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  while (pos < text.size()) {
    const char c = text[pos++];
    if (quoted) {
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          cur += '"';
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted) fail(ErrorCode::IoError, "csv: unterminated quoted field");
  cells.push_back(cur);
  return cells;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

double parse_number(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    fail(ErrorCode::IoError, "csv: '" + s + "' is not a number");
  return v;
}

Cell::Cell(double v) : text_(format_number(v)) {}
Cell::Cell(int64_t v) : text_(std::to_string(v)) {}
Cell::Cell(uint64_t v) : text_(std::to_string(v)) {}

void ResultTable::add_row(const std::vector<Cell>& cells) {
  if (cells.size() != columns.size())
    fail(ErrorCode::InvalidArgument, "result table: row width differs from the header");
  std::vector<std::string> row;
  row.reserve(cells.size());
  for (const auto& c : cells) row.push_back(c.text());
  rows.push_back(std::move(row));
}

void ResultTable::set_meta(const std::string& key, const std::string& value) {
  for (auto& [k, v] : metadata)
    if (k == key) {
      v = value;
      return;
    }
  metadata.emplace_back(key, value);
}

std::string ResultTable::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata)
    if (k == key) return v;
  return {};
}

std::string ResultTable::body() const {
  std::string out = join(columns) + "\n";
  for (const auto& r : rows) out += join(r) + "\n";
  return out;
}

std::string ResultTable::to_csv() const {
  std::string out = std::string("# format: ") + format_version + "\n";
  out += "# schema: " + schema + "\n";
  for (const auto& [k, v] : metadata) {
    std::string flat = v;
    for (char& c : flat)
      if (c == '\n' || c == '\r') c = ' ';
    out += "# " + k + ": " + flat + "\n";
  }
  return out + body();
}

ResultTable ResultTable::parse(const std::string& text) {
  ResultTable t;
  std::size_t pos = 0;
  bool header = false;
  while (pos < text.size()) {
    if (!header && text[pos] == '#') {
      auto end = text.find('\n', pos);
      if (end == std::string::npos) end = text.size();
      const std::string line = text.substr(pos + 1, end - pos - 1);
      pos = end + 1;
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      std::string key = line.substr(0, colon), value = line.substr(colon + 1);
      auto strip = [](std::string& s) {
        while (!s.empty() && (s.front() == ' ')) s.erase(s.begin());
        while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.pop_back();
      };
      strip(key);
      strip(value);
      if (key == "format") {
        if (value != format_version) fail(ErrorCode::IoError, "csv: unsupported format '" + value + "'");
      } else if (key == "schema") {
        t.schema = value;
      } else {
        t.metadata.emplace_back(key, value);
      }
      continue;
    }
    auto record = read_record(text, pos);
    if (!header) {
      t.columns = std::move(record);
      header = true;
    } else {
      if (record.size() == 1 && record[0].empty()) continue;
      if (record.size() != t.columns.size()) fail(ErrorCode::IoError, "csv: ragged row");
      t.rows.push_back(std::move(record));
    }
  }
  if (!header) fail(ErrorCode::IoError, "csv: missing header row");
  return t;
}

std::size_t ResultTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  fail(ErrorCode::InvalidArgument, "result table: no column '" + name + "'");
}

double ResultTable::number(std::size_t row, const std::string& name) const {
  return parse_number(rows.at(row).at(column(name)));
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorCode::IoError, "write failed for '" + path + "'");
}

}  // namespace sipkit
