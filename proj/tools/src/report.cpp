#include "report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

namespace parrondo::cli {

#ifndef PARRONDO_VERSION
#define PARRONDO_VERSION "0.0.0"
#endif
const char* const kToolVersion = PARRONDO_VERSION;

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return csv_quote(v);
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

json json_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          return std::isfinite(v) ? json(v) : json(nullptr);
        } else {
          return v;
        }
      },
      cell);
}

}  // namespace

void Table::add(std::vector<Cell> row) {
  row.resize(columns.size());
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << csv_quote(table.columns[i]);
  }
  out << "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << "\r\n";
  }
}

json table_json(const Table& table, const json& manifest) {
  json doc = json::object();
  doc["schema"] = table.schema;
  json rows = json::array();
  for (const auto& row : table.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = json_cell(row[i]);
    rows.push_back(std::move(obj));
  }
  if (table.single_record && rows.size() == 1) {
    for (const auto& [k, v] : rows[0].items()) doc[k] = v;
  }
  doc["rows"] = std::move(rows);
  doc["manifest"] = manifest;
  return doc;
}

json Manifest::to_json() const {
  json m = json::object();
  m["schema"] = "parrondo.manifest/1";
  m["command"] = command;
  m["parameters"] = parameters;
  if (parameters.contains("seed")) m["seed"] = parameters["seed"];
  m["tool_version"] = kToolVersion;
  m["started_utc"] = started_utc;
  m["wall_clock_seconds"] = wall_clock_seconds;
  m["outputs"] = outputs;
  m["threads"] = threads;
  m["exit_code"] = exit_code;
  return m;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace parrondo::cli
