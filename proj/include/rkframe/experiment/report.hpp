#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "config.hpp"

namespace rkframe::experiment {

inline constexpr const char* tool_name = "rkframe";
inline constexpr const char* tool_version = "0.1.0";

// Cells are pre-formatted strings: reals through fmt17, complex entries as
// "re,im" (one CSV cell, quoted). The same cells appear in the JSON document,
// so both formats carry identical digits.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

inline std::string complex_cell(const cplx& z) {
  return fmt17(z.real()) + "," + fmt17(z.imag());
}

struct ExperimentReport {
  json results;  // command-specific scalars and small structures
  std::vector<Table> tables;
  std::vector<std::string> warnings;
  json config;  // normalized echo

  json document() const {
    json doc;
    doc["tool"] = tool_name;
    doc["version"] = tool_version;
    doc["config"] = config;
    doc["results"] = results;
    json tj;
    for (const Table& t : tables) {
      json one;
      one["columns"] = t.columns;
      one["rows"] = t.rows;
      tj[t.name] = std::move(one);
    }
    doc["tables"] = std::move(tj);
    doc["warnings"] = warnings;
    return doc;
  }
};

enum class report_format { json, csv };

inline report_format parse_format(const std::string& s) {
  if (s == "json") return report_format::json;
  if (s == "csv") return report_format::csv;
  throw config_error("format must be json or csv");
}

namespace detail {

inline std::string csv_escape(const std::string& cell) {
  bool quote = cell.find_first_of(",\"\n\r") != std::string::npos;
  if (!quote) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Write whole files through a temp name and rename into place; failures
// remove the partial file so no truncated artifact survives.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw io_error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw io_error("cannot move report into place at " + path.string());
  }
}

}  // namespace detail

// JSON: a single document <out>/report.json. CSV: one file per table,
// <out>/<table>.csv. Returns the written paths.
inline std::vector<std::filesystem::path> emit_report(const ExperimentReport& report,
                                                      report_format format,
                                                      const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec && !std::filesystem::is_directory(out_dir))
    throw io_error("cannot create output directory " + out_dir.string());
  std::vector<std::filesystem::path> written;
  if (format == report_format::json) {
    std::filesystem::path path = out_dir / "report.json";
    detail::write_file_atomic(path, report.document().dump(2) + "\n");
    written.push_back(path);
    return written;
  }
  for (const Table& t : report.tables) {
    std::string content;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      if (c) content += ',';
      content += detail::csv_escape(t.columns[c]);
    }
    content += '\n';
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) content += ',';
        content += detail::csv_escape(row[c]);
      }
      content += '\n';
    }
    std::filesystem::path path = out_dir / (t.name + ".csv");
    detail::write_file_atomic(path, content);
    written.push_back(path);
  }
  return written;
}

}  // namespace rkframe::experiment
