#include "pfl/overlaps.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace pfl {

namespace {

void check_index(int n, const char* what) {
  if (n < 0) {
    throw ParameterError(std::string("overlap: negative index ") + what);
  }
}

void check_level(int level) {
  if (level < 0) {
    throw ParameterError("level must be >= 0, got " + std::to_string(level));
  }
  if (level > kMaxLevel) {
    throw ParameterError("level " + std::to_string(level) + " exceeds the supported cap " +
                         std::to_string(kMaxLevel));
  }
}

double factorial(int n) { return std::tgamma(double(n) + 1.0); }

// Repeated multiplication; z^0 = 1 even for z = 0.
Complex ipow(Complex z, int n) {
  Complex out(1.0, 0.0);
  for (int i = 0; i < n; ++i) out *= z;
  return out;
}

}  // namespace

NCBosonParams NCBosonParams::from_coefficients(Complex alpha_x, Complex alpha_y, Complex beta_x,
                                               Complex beta_y, double norm_tol) {
  const double alpha_norm = std::norm(alpha_x) + std::norm(alpha_y);
  const double beta_norm = std::norm(beta_x) + std::norm(beta_y);
  if (std::abs(alpha_norm - 1.0) > norm_tol || std::abs(beta_norm - 1.0) > norm_tol) {
    throw ParameterError("NCBosonParams: coefficient rows must have unit norm");
  }
  if (std::abs(alpha_x * beta_y - alpha_y * beta_x) <= norm_tol) {
    throw ParameterError("NCBosonParams: alpha_x beta_y - alpha_y beta_x must be nonzero");
  }
  return NCBosonParams(alpha_x, alpha_y, beta_x, beta_y, false);
}

NCBosonParams NCBosonParams::from_gamma(Complex gamma) {
  const double mod2 = std::norm(gamma);
  if (!(mod2 < 1.0)) {
    throw ParameterError("NCBosonParams: |gamma| must be < 1");
  }
  // beta_x = conj(gamma) so that alpha . conj(beta) = gamma.
  return NCBosonParams(Complex(1.0, 0.0), Complex(0.0, 0.0), std::conj(gamma),
                       Complex(std::sqrt(1.0 - mod2), 0.0), true);
}

// T(n; k) = <(A1^+)^n1 (A2^+)^n2 Phi00, (A1^+)^k1 (A2^+)^k2 Phi00>.
// Moving one A1 (or A2, once n1 = 0) across to the right uses
//   A1 (A1^+)^k1 (A2^+)^k2 Phi00 = k1 (..k1-1..) + gamma k2 (..k2-1..),
//   A2 (A1^+)^k1 (A2^+)^k2 Phi00 = conj(gamma) k1 (..k1-1..) + k2 (..k2-1..).
Complex OverlapTable::unnormalized(int n1, int n2, int k1, int k2) {
  if (n1 + n2 != k1 + k2) {
    return {0.0, 0.0};
  }
  if (n1 == 0 && n2 == 0) {
    return {1.0, 0.0};
  }
  const std::array<int, 4> key{n1, n2, k1, k2};
  if (auto it = memo_.find(key); it != memo_.end()) {
    return it->second;
  }
  Complex value(0.0, 0.0);
  if (n1 >= 1) {
    if (k1 >= 1) value += double(k1) * unnormalized(n1 - 1, n2, k1 - 1, k2);
    if (k2 >= 1) value += gamma_ * double(k2) * unnormalized(n1 - 1, n2, k1, k2 - 1);
  } else {
    if (k1 >= 1) value += std::conj(gamma_) * double(k1) * unnormalized(0, n2 - 1, k1 - 1, k2);
    if (k2 >= 1) value += double(k2) * unnormalized(0, n2 - 1, k1, k2 - 1);
  }
  memo_.emplace(key, value);
  return value;
}

Complex OverlapTable::operator()(int n1, int n2, int k1, int k2) {
  check_index(n1, "n1");
  check_index(n2, "n2");
  check_index(k1, "k1");
  check_index(k2, "k2");
  if (n1 + n2 != k1 + k2) {
    return {0.0, 0.0};
  }
  check_level(n1 + n2);
  const double norm = std::sqrt(factorial(n1) * factorial(n2) * factorial(k1) * factorial(k2));
  return unnormalized(n1, n2, k1, k2) / norm;
}

Complex overlap(int n1, int n2, int k1, int k2, Complex gamma) {
  OverlapTable table(gamma);
  return table(n1, n2, k1, k2);
}

Vector fock_expand_oracle(int n1, int n2, const NCBosonParams& params, int level_cap) {
  if (n1 < 0 || n2 < 0) {
    throw ParameterError("fock_expand_oracle: negative occupation");
  }
  if (level_cap < 1 || level_cap > kMaxLevel) {
    throw ParameterError("fock_expand_oracle: level cap out of range");
  }
  if (n1 + n2 > level_cap) {
    throw ParameterError("fock_expand_oracle: n1 + n2 exceeds the level cap");
  }
  const int mode_dim = level_cap + 1;

  // Binomial coefficient table up to level_cap.
  std::vector<std::vector<double>> binom(level_cap + 1, std::vector<double>(level_cap + 1, 0.0));
  for (int n = 0; n <= level_cap; ++n) {
    binom[n][0] = 1.0;
    for (int j = 1; j <= n; ++j) binom[n][j] = binom[n - 1][j - 1] + binom[n - 1][j];
  }

  // (A1^+)^n1 = sum_i C(n1,i) conj(ax)^i conj(ay)^(n1-i) (a_x^+)^i (a_y^+)^(n1-i), likewise A2^+.
  const Complex cax = std::conj(params.alpha_x());
  const Complex cay = std::conj(params.alpha_y());
  const Complex cbx = std::conj(params.beta_x());
  const Complex cby = std::conj(params.beta_y());

  Vector coeffs = Vector::Zero(Eigen::Index(mode_dim) * mode_dim);
  for (int i = 0; i <= n1; ++i) {
    const Complex first = binom[n1][i] * ipow(cax, i) * ipow(cay, n1 - i);
    for (int j = 0; j <= n2; ++j) {
      const Complex second = binom[n2][j] * ipow(cbx, j) * ipow(cby, n2 - j);
      const int px = i + j;
      const int py = (n1 - i) + (n2 - j);
      // (a_x^+)^px (a_y^+)^py Phi00 = sqrt(px! py!) phi_{px,py}
      coeffs(Eigen::Index(px) * mode_dim + py) +=
          first * second * std::sqrt(factorial(px) * factorial(py));
    }
  }
  return coeffs / std::sqrt(factorial(n1) * factorial(n2));
}

double GramBlock::smallest_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

GramBlock gram_block(int level, Complex gamma) {
  check_level(level);
  OverlapTable table(gamma);
  const int dim = level + 1;
  GramBlock block{level, gamma, Matrix::Zero(dim, dim)};
  for (int j = 0; j < dim; ++j) {
    block.matrix(j, j) = Complex(table(level - j, j, level - j, j).real(), 0.0);
    for (int k = j + 1; k < dim; ++k) {
      const Complex v = table(level - j, j, level - k, k);
      block.matrix(j, k) = v;
      block.matrix(k, j) = std::conj(v);
    }
  }
  return block;
}

}  // namespace pfl
