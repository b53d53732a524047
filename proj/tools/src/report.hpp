#pragma once

// Tabular results and their CSV / JSON renderings, plus the run manifest.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace parrondo::cli {

using json = nlohmann::json;

// std::monostate renders as an empty CSV field and JSON null.
using Cell = std::variant<std::monostate, double, long long, std::uint64_t, bool, std::string>;

struct Table {
  std::string schema;  // e.g. "parrondo.exact-mean/1"
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // Single-record tables also spread their row over the top level of the JSON document.
  bool single_record = false;

  void add(std::vector<Cell> row);
};

// %.17g; non-finite values as nan / inf / -inf.
std::string format_double(double v);

void write_csv(std::ostream& out, const Table& table);
json table_json(const Table& table, const json& manifest);

struct Manifest {
  std::string command;
  json parameters;
  std::string started_utc;
  double wall_clock_seconds = 0.0;
  std::vector<std::string> outputs;
  int threads = 0;
  int exit_code = 0;

  json to_json() const;
};

std::string utc_now();
extern const char* const kToolVersion;

}  // namespace parrondo::cli
