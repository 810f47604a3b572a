#pragma once

// Locale-independent CSV output: header row mandatory, '.' decimal point,
// numeric fields printed with 9 significant digits, RFC-4180-style quoting.

#include <charconv>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace eigenshrink {

inline std::string format_double(double v, int significant = 9) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, significant);
  return std::string(buf, res.ptr);
}

inline std::string csv_escape(std::string_view field) {
  const bool needs_quote =
      field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quote) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) os_ << ',';
      os_ << csv_escape(fields[i]);
    }
    os_ << '\n';
  }

 private:
  std::ostream& os_;
};

}  // namespace eigenshrink
