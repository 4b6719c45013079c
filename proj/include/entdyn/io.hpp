#pragma once

// Deterministic data output: CSV with '#' comment header lines carrying the
// resolved parameters, then a column header row, then data rows. Numbers
// are printed in shortest round-trip form so identical runs give identical
// bytes.

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace entdyn {

inline std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

struct DataTable {
  std::vector<std::string> comments; // emitted as "# ..." lines
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data; // data[c][row]

  std::size_t rows() const { return data.empty() ? 0 : data.front().size(); }
};

inline void write_csv(const std::string& path, const DataTable& table) {
  for (const auto& col : table.data)
    if (col.size() != table.rows())
      throw std::invalid_argument("write_csv: ragged columns");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  for (const auto& line : table.comments) out << "# " << line << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c];
  out << "\n";
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.data.size(); ++c)
      out << (c ? "," : "") << format_double(table.data[c][r]);
    out << "\n";
  }
}

inline void write_json(const std::string& path, const DataTable& table) {
  nlohmann::json doc;
  doc["comments"] = table.comments;
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    doc["columns"][table.columns[c]] = table.data[c];
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_json: cannot open " + path);
  out << doc.dump(2) << "\n";
}

inline void write_metadata(const std::string& data_path, const nlohmann::json& meta) {
  std::ofstream out(data_path + ".meta.json", std::ios::binary);
  if (!out) throw std::runtime_error("write_metadata: cannot open sidecar for " + data_path);
  out << meta.dump(2) << "\n";
}

} // namespace entdyn
