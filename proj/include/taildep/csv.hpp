#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace taildep::csv {

struct Row {
  std::size_t line;  // 1-based line number where the record starts
  std::vector<std::string> fields;
};

/// Reads RFC 4180 records (quoted fields, doubled quotes, CRLF or LF).
/// Blank lines are skipped.
std::vector<Row> read(std::istream& in);
std::vector<Row> read_file(const std::string& path);

/// Shortest decimal representation that round-trips; "NaN" for NaN.
std::string format_double(double value);

/// Parses a decimal number; empty, "NA", "NaN" and "nan" map to NaN.
/// Returns false if the text is not a number.
bool parse_double(std::string_view text, double& out);

std::string escape(std::string_view field);

void write_row(std::ostream& out, std::span<const std::string> fields);

}  // namespace taildep::csv
