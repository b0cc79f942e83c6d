#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sipkit {

/// A table cell: numbers are formatted once, at insertion, with enough
/// digits to round-trip; non-finite values become `inf`, `-inf`, `nan`.
class Cell {
 public:
  Cell(double v);
  Cell(int v) : Cell(static_cast<int64_t>(v)) {}
  Cell(int64_t v);
  Cell(uint64_t v);
  Cell(std::string s) : text_(std::move(s)) {}
  Cell(const char* s) : text_(s) {}

  const std::string& text() const noexcept { return text_; }

 private:
  std::string text_;
};

/// CSV output of every subcommand: `# key: value` metadata lines, a header
/// row and data rows (RFC 4180 quoting).
struct ResultTable {
  static constexpr const char* format_version = "sipkit-csv/1";

  std::string schema;  // e.g. "diff-prob/1"
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  void add_row(const std::vector<Cell>& cells);
  void set_meta(const std::string& key, const std::string& value);
  std::string meta(const std::string& key) const;

  /// Header row plus data rows; deterministic for a fixed computation.
  std::string body() const;
  /// Metadata block followed by body().
  std::string to_csv() const;
  /// Inverse of to_csv(); throws Error(IoError) on malformed input.
  static ResultTable parse(const std::string& text);

  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

std::string format_number(double v);
double parse_number(const std::string& s);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace sipkit
