#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "ptmag/errors.hpp"

namespace ptmag::cli {

/// Named real columns plus an optional trailing text column.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::string text_column;                ///< empty when there is no text column
  std::vector<std::string> text;          ///< one entry per row when text_column is set

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    throw IndexError("ResultTable: no column '" + name + "'");
  }

  std::vector<double> values(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[c]);
    return out;
  }
};

inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

/// RFC 4180: CRLF line ends, fields quoted only when needed.
inline std::string emit_csv(const ResultTable& t) {
  std::string out;
  auto header = t.columns;
  if (!t.text_column.empty()) header.push_back(t.text_column);
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + csv_field(header[i]);
  out += "\r\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t c = 0; c < t.rows[r].size(); ++c) out += (c ? "," : "") + format_number(t.rows[r][c]);
    if (!t.text_column.empty()) out += "," + csv_field(r < t.text.size() ? t.text[r] : "");
    out += "\r\n";
  }
  return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  f.close();
  if (!f) throw IoError("write to '" + path + "' failed");
}

}  // namespace ptmag::cli
