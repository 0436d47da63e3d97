#pragma once

#include <array>
#include <map>

#include "pfl/linalg.hpp"

namespace pfl {

/// Largest total occupation n1 + n2 handled by the overlap algebra. Overlaps
/// are accumulated unnormalized, so factorials must stay finite in double.
inline constexpr int kMaxLevel = 30;

/// Coefficients of the deformed pair
///   A1 = alpha_x a_x + alpha_y a_y,   A2 = beta_x a_x + beta_y a_y,
/// with unit-norm coefficient rows and gamma = alpha . conj(beta), so that
/// [A1, A2^dagger] = gamma.
class NCBosonParams {
 public:
  /// Validates |alpha|^2 = |beta|^2 = 1 within `norm_tol` and
  /// alpha_x beta_y - alpha_y beta_x != 0.
  static NCBosonParams from_coefficients(Complex alpha_x, Complex alpha_y, Complex beta_x,
                                         Complex beta_y, double norm_tol = 1e-10);

  /// Canonical pair alpha = (1, 0), beta = (conj(gamma), sqrt(1 - |gamma|^2)).
  /// Requires |gamma| < 1.
  static NCBosonParams from_gamma(Complex gamma);

  Complex alpha_x() const { return alpha_x_; }
  Complex alpha_y() const { return alpha_y_; }
  Complex beta_x() const { return beta_x_; }
  Complex beta_y() const { return beta_y_; }
  Complex gamma() const { return alpha_x_ * std::conj(beta_x_) + alpha_y_ * std::conj(beta_y_); }
  Complex determinant() const { return alpha_x_ * beta_y_ - alpha_y_ * beta_x_; }
  bool gamma_only() const { return gamma_only_; }

 private:
  NCBosonParams(Complex ax, Complex ay, Complex bx, Complex by, bool gamma_only)
      : alpha_x_(ax), alpha_y_(ay), beta_x_(bx), beta_y_(by), gamma_only_(gamma_only) {}

  Complex alpha_x_;
  Complex alpha_y_;
  Complex beta_x_;
  Complex beta_y_;
  bool gamma_only_;
};

/// Memoized evaluator of <Phi_{n1,n2}, Phi_{k1,k2}> for one fixed gamma,
/// driven purely by the commutation rules of A1, A2. Not thread-safe; use one
/// table per thread.
class OverlapTable {
 public:
  explicit OverlapTable(Complex gamma) : gamma_(gamma) {}

  Complex gamma() const { return gamma_; }

  /// Normalized overlap. Zero whenever n1 + n2 != k1 + k2.
  Complex operator()(int n1, int n2, int k1, int k2);

 private:
  Complex unnormalized(int n1, int n2, int k1, int k2);

  Complex gamma_;
  std::map<std::array<int, 4>, Complex> memo_;
};

/// One-shot overlap (fresh memo table per call).
Complex overlap(int n1, int n2, int k1, int k2, Complex gamma);

/// Coefficients of Phi_{n1,n2} over the orthonormal product basis phi_{m1,m2},
/// obtained by binomially expanding the creation polynomials. The vector is
/// laid out like FockRep with per-mode cutoff `level_cap`; requires
/// n1 + n2 <= level_cap. Independent of the recursion in OverlapTable.
Vector fock_expand_oracle(int n1, int n2, const NCBosonParams& params, int level_cap);

struct GramBlock {
  int level = 0;
  Complex gamma;
  /// (j, k) = <h_j, h_k> with h_j = Phi_{level - j, j}.
  Matrix matrix;

  double smallest_eigenvalue() const;
  bool positive_definite(double floor = 1e-12) const { return smallest_eigenvalue() > floor; }
};

GramBlock gram_block(int level, Complex gamma);

}  // namespace pfl
