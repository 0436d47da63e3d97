#include "pfl/fixtures.hpp"

#include <cmath>

namespace pfl {

namespace {

Matrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(Eigen::Index(rows.size()), Eigen::Index(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

std::vector<NamedMatrix> level_one(double g) {
  const double r = std::sqrt(g);
  const double s5g = std::sqrt(5.0 * g);
  const double s5 = std::sqrt(5.0);
  return {
      {"a", real_matrix({{0, 1}, {0, 0}})},
      {"b", real_matrix({{1, -1}, {1, -1}})},
      {"N", real_matrix({{0, 1}, {0, 1}})},
      {"e", real_matrix({{1 / r, 0}, {-1 / r, 1 / r}})},
      {"S_h", g * real_matrix({{2, 1}, {1, 1}})},
      {"S_e", (1 / g) * real_matrix({{1, -1}, {-1, 2}})},
      {"sqrt_S_e", (1 / s5g) * real_matrix({{2, -1}, {-1, 3}})},
      {"n", (1 / 5.0) * real_matrix({{1, 2}, {2, 4}})},
      {"c", (1 / s5) * real_matrix({{2, 1}, {-1, 2}})},
  };
}

std::vector<NamedMatrix> level_two(double g) {
  const double s2 = std::sqrt(2.0);
  const double g2 = g * g, g3 = g2 * g, g4 = g2 * g2;
  return {
      {"a", real_matrix({{0, 2, s2 - 2}, {0, 0, g}, {0, 0, 0}})},
      {"b", real_matrix({{1 / (s2 * g), (s2 / g) * (g - 1 / (s2 * g)), -0.5 - s2 + 1 / g2},
                         {0.5, (s2 / g) * (s2 - 0.5), -g / (2 * s2) - (s2 / g) * (s2 - 0.5)},
                         {0, 2 / g, -2 / g}})},
      {"N", real_matrix({{0, s2 / g, s2 * (g2 - 1) / g}, {0, 1, 1}, {0, 0, 2}})},
      {"e", real_matrix({{(g / s2) / g2, 0, 0},
                         {-1 / g2, s2 / g, 0},
                         {(1 - g2 / 2) / g2, -s2 / g, 1}})},
      {"S_h", real_matrix({{1 + 2.5 * g2, s2 * g, g / s2}, {s2 * g, 1 + g2 / 2, 1}, {g / s2, 1, 1}})},
      {"S_e", real_matrix({{1 / (2 * g2), -1 / (s2 * g3), (1 - g2 / 2) / (s2 * g3)},
                           {-1 / (s2 * g3), (2 + 1 / g2) / g2, -(1.5 + 1 / g2) / g2},
                           {(1 - g2 / 2) / (s2 * g3), -(1.5 + 1 / g2) / g2, 1 / g4 + 1 / g2 + 1.25}})},
  };
}

const Matrix& field(const BlockSystem& sys, const std::string& name) {
  if (name == "a") return sys.a;
  if (name == "b") return sys.b;
  if (name == "N") return sys.number;
  if (name == "e") return sys.basis.e;
  if (name == "S_h") return sys.s_h;
  if (name == "S_e") return sys.s_e;
  if (name == "sqrt_S_e") return sys.sqrt_s_e;
  if (name == "n") return sys.n_selfadjoint;
  if (name == "c") return sys.c;
  throw ParameterError("fixture_checks: unknown field " + name);
}

}  // namespace

std::vector<NamedMatrix> fixture_formulas(int level, double gamma) {
  if (!(gamma > 0.0)) {
    throw ParameterError("fixture_formulas: gamma must be > 0");
  }
  if (level == 1) return level_one(gamma);
  if (level == 2) return level_two(gamma);
  throw ParameterError("fixture_formulas: level must be 1 or 2");
}

std::vector<Check> fixture_checks(const BlockSystem& sys, double gamma, double tol) {
  std::vector<Check> checks;
  for (const auto& [name, expected] : fixture_formulas(sys.level(), gamma)) {
    checks.push_back(make_check("fixture_" + name, relative_residual(field(sys, name), expected), tol));
  }
  // The kernel route must land on the printed e-vectors as well.
  for (const auto& [name, expected] : fixture_formulas(sys.level(), gamma)) {
    if (name == "e") {
      checks.push_back(make_check("fixture_e_by_kernel", relative_residual(sys.kernel_dual, expected), tol));
    }
  }
  return checks;
}

}  // namespace pfl
