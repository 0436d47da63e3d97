#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "pfl/blocks.hpp"
#include "pfl/linalg.hpp"

namespace pfl {

using RealFunction = std::function<double(double)>;

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with `order` nodes on [lo, hi], unit weight. Exact for
/// polynomials of degree <= 2 order - 1.
QuadratureRule gauss_legendre(int order, double lo = -1.0, double hi = 1.0);

inline constexpr int kDefaultQuadratureOrder = 64;

/// Bicoherent family over H_N: orthonormal Legendre functions phi_n on
/// [x_lo, x_hi], dressed as Phi_n = exp(alpha) phi_n and Psi_n = exp(-alpha)
/// phi_n with one shared real alpha(x), paired with a biorthonormal vector
/// basis (columns of h and e).
class BicoherentFamily {
 public:
  BicoherentFamily(int n_states, RealFunction alpha, Matrix h, Matrix e, QuadratureRule quadrature,
                   double x_lo, double x_hi);

  int n_states() const { return n_states_; }
  double x_lo() const { return x_lo_; }
  double x_hi() const { return x_hi_; }
  const Matrix& h() const { return h_; }
  const Matrix& e() const { return e_; }
  const QuadratureRule& quadrature() const { return quadrature_; }

  /// Orthonormal Legendre function phi_n(x); no domain check.
  double phi(int n, double x) const;
  double dressed_phi(int n, double x) const;  // Phi_n
  double dressed_psi(int n, double x) const;  // Psi_n
  double alpha(double x) const { return alpha_(x); }

  /// sum_n conj(Phi_n(x)) Psi_n(x).
  double n_tilde(double x) const;
  /// sum_n |phi_n(x)|^2 (the undressed normalization).
  double n_plain(double x) const;

 private:
  std::vector<double> phis(double x) const;

  int n_states_;
  RealFunction alpha_;
  Matrix h_;
  Matrix e_;
  QuadratureRule quadrature_;
  double x_lo_;
  double x_hi_;
};

/// Validates the pair (square, matching n_states, biorthonormal), builds a
/// Gauss-Legendre rule of `quadrature_order` nodes, and rejects families whose
/// N~(x) is not strictly positive on every node.
BicoherentFamily build_family(int n_states, RealFunction alpha, const Matrix& h, const Matrix& e,
                              int quadrature_order = kDefaultQuadratureOrder, double x_lo = -1.0,
                              double x_hi = 1.0);

/// Convenience: identity pair (orthonormal basis) of size n_states.
BicoherentFamily build_family(int n_states, RealFunction alpha,
                              int quadrature_order = kDefaultQuadratureOrder);

BicoherentFamily build_family(int n_states, RealFunction alpha, const BlockBasis& basis,
                              int quadrature_order = kDefaultQuadratureOrder);

/// e(x) = sum_n Phi_n(x) e_n / sqrt(N~(x)),  h(x) = sum_n Psi_n(x) h_n / sqrt(N~(x)).
/// Throws ParameterError outside [x_lo, x_hi] or where N~(x) <= 0.
std::pair<Vector, Vector> states_at(const BicoherentFamily& family, double x);

/// max over m, n of |<Psi_m, Phi_n> - delta_mn| under the family's quadrature.
double function_biorthogonality_residual(const BicoherentFamily& family);

struct OperatorResidual {
  Matrix op;
  double residual = 0.0;  // max |op - 1|
};

/// sum_q w_q N~(x_q) |e(x_q)><h(x_q)|.
OperatorResidual resolution_of_identity(const BicoherentFamily& family);

/// sum_q w_q f(x_q) N~(x_q) |e(x_q)><h(x_q)|.
Matrix upper_symbol(const BicoherentFamily& family, const RealFunction& classical);

}  // namespace pfl
