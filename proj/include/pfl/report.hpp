#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pfl/blocks.hpp"
#include "pfl/linalg.hpp"

namespace pfl {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "pfl-1";

/// Complex numbers are [re, im]; matrices are row-major arrays of rows.
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// Serialized outcome of one CLI command.
struct ReportDocument {
  std::string command;
  Json parameters = Json::object();
  std::vector<std::pair<std::string, Matrix>> matrices;
  std::vector<Check> checks;
  /// Command-specific scalars and lists (singular values, norms, ...).
  Json data = Json::object();

  bool all_pass() const;
  void add_checks(const std::vector<Check>& more, const std::string& prefix = {});

  Json to_json() const;
  static ReportDocument from_json(const Json& j);
  std::string dump() const { return to_json().dump(2) + "\n"; }
};

}  // namespace pfl
