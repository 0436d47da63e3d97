#include "pfl/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pfl {

namespace {

// JSON has no inf/nan; encode them as strings so reports stay parseable.
Json real_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double real_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ParameterError("report: unexpected string for a real number: " + s);
  }
  return j.get<double>();
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({real_to_json(z.real()), real_to_json(z.imag())}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw ParameterError("report: complex number must be a two-element array");
  }
  return {real_from_json(j[0]), real_from_json(j[1])};
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) {
    throw ParameterError("report: matrix must be an array of rows");
  }
  const auto rows = Eigen::Index(j.size());
  const auto cols = rows == 0 ? Eigen::Index(0) : Eigen::Index(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (Eigen::Index(j[i].size()) != cols) {
      throw ParameterError("report: ragged matrix rows");
    }
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

bool ReportDocument::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void ReportDocument::add_checks(const std::vector<Check>& more, const std::string& prefix) {
  for (Check c : more) {
    c.name = prefix + c.name;
    checks.push_back(std::move(c));
  }
}

Json ReportDocument::to_json() const {
  Json doc = Json::object();
  doc["version"] = kSchemaVersion;
  doc["command"] = command;
  doc["parameters"] = parameters;
  Json mats = Json::array();
  for (const auto& [name, m] : matrices) {
    mats.push_back(Json{{"name", name}, {"rows", m.rows()}, {"cols", m.cols()}, {"data", matrix_to_json(m)}});
  }
  doc["matrices"] = std::move(mats);
  Json cks = Json::array();
  for (const Check& c : checks) {
    cks.push_back(Json{{"name", c.name},
                       {"residual", real_to_json(c.residual)},
                       {"tolerance", real_to_json(c.tolerance)},
                       {"pass", c.pass}});
  }
  doc["checks"] = std::move(cks);
  doc["data"] = data;
  doc["all_pass"] = all_pass();
  return doc;
}

ReportDocument ReportDocument::from_json(const Json& j) {
  if (j.value("version", std::string()) != kSchemaVersion) {
    throw ParameterError("report: unsupported schema version");
  }
  ReportDocument doc;
  doc.command = j.at("command").get<std::string>();
  doc.parameters = j.at("parameters");
  for (const auto& m : j.at("matrices")) {
    doc.matrices.emplace_back(m.at("name").get<std::string>(), matrix_from_json(m.at("data")));
  }
  for (const auto& c : j.at("checks")) {
    doc.checks.push_back(Check{c.at("name").get<std::string>(), real_from_json(c.at("residual")),
                               real_from_json(c.at("tolerance")), c.at("pass").get<bool>()});
  }
  doc.data = j.value("data", Json::object());
  return doc;
}

}  // namespace pfl
