#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace blowup_lab {

using nlohmann::json;

// Full round-trip precision, '.' decimal separator (C locale is never
// changed by the tool).
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Cells are JSON values: numbers render with fmt17 in CSV, strings as-is,
// null as an empty field.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

inline std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  return fmt17(v.get<double>());
}

// '#'-prefixed header block carrying the manifest inline, then the body;
// LF line endings throughout.
inline void write_csv(std::ostream& os, const std::string& title,
                      const json& manifest, const Table& t) {
  os << "# " << title << "\n";
  os << "# manifest: " << manifest.dump() << "\n";
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    os << (c ? "," : "") << t.columns[c];
  }
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << (c ? "," : "") << csv_cell(row[c]);
    }
    os << "\n";
  }
}

inline void write_json_doc(std::ostream& os, const json& manifest,
                           const Table& t) {
  json doc;
  doc["manifest"] = manifest;
  doc["columns"] = t.columns;
  doc["rows"] = t.rows;
  os << doc.dump(2) << "\n";
}

}  // namespace blowup_lab
