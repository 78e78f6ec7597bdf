#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace fpiter {

/// Fixed-point decimal formatting (round-half-even through the binary
/// value, trailing zeros kept). decimals must lie in [0, 17].
std::string format_fixed(double value, int decimals);

/// RFC-4180 style field quoting; numbers pass through untouched.
std::string csv_escape(const std::string& field);

struct TextTable {
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
};

/// Renders with the given separator (',' for CSV, '\t' for TSV), LF line
/// endings, header row first.
std::string render_delimited(const TextTable& table, char sep);

/// Parses a delimited table back (no embedded separators in numeric data);
/// used by round-trip checks and the verify path.
TextTable parse_delimited(const std::string& text, char sep);

}  // namespace fpiter
