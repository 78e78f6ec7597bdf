#include "fpiter/report.hpp"

#include <cstdio>
#include <sstream>

#include "fpiter/errors.hpp"

namespace fpiter {

std::string format_fixed(double value, int decimals) {
  if (decimals < 0 || decimals > 17) {
    throw ParameterError("printed precision must lie in [0, 17]");
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\t") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string render_delimited(const TextTable& table, char sep) {
  std::ostringstream os;
  auto emit_row = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << sep;
      os << csv_escape(row[i]);
    }
    os << '\n';
  };
  emit_row(table.headers);
  for (const auto& row : table.rows) emit_row(row);
  return os.str();
}

TextTable parse_delimited(const std::string& text, char sep) {
  TextTable table;
  std::istringstream is(text);
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, sep)) fields.push_back(field);
    if (first) {
      table.headers = std::move(fields);
      first = false;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  return table;
}

}  // namespace fpiter
