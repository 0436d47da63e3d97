#include "pfl/bicoherent.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace pfl {

QuadratureRule gauss_legendre(int order, double lo, double hi) {
  if (order < 1) {
    throw ParameterError("gauss_legendre: order must be >= 1");
  }
  if (!(hi > lo)) {
    throw ParameterError("gauss_legendre: empty interval");
  }
  QuadratureRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double half = (hi - lo) / 2.0;
  const double mid = (hi + lo) / 2.0;
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-like initial guess, then Newton on P_order.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = order * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = 0.0;
    for (int j = 1; j <= order; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
    }
    dp = order * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = mid - half * z;
    rule.nodes[order - 1 - i] = mid + half * z;
    rule.weights[i] = half * w;
    rule.weights[order - 1 - i] = half * w;
  }
  return rule;
}

BicoherentFamily::BicoherentFamily(int n_states, RealFunction alpha, Matrix h, Matrix e,
                                   QuadratureRule quadrature, double x_lo, double x_hi)
    : n_states_(n_states),
      alpha_(std::move(alpha)),
      h_(std::move(h)),
      e_(std::move(e)),
      quadrature_(std::move(quadrature)),
      x_lo_(x_lo),
      x_hi_(x_hi) {}

std::vector<double> BicoherentFamily::phis(double x) const {
  // Legendre recurrence on the reference variable t in [-1, 1].
  const double t = (2.0 * x - x_lo_ - x_hi_) / (x_hi_ - x_lo_);
  const double jacobian = 2.0 / (x_hi_ - x_lo_);
  std::vector<double> out(n_states_);
  double p_prev = 0.0, p = 1.0;
  for (int n = 0; n < n_states_; ++n) {
    out[n] = std::sqrt((2.0 * n + 1.0) / 2.0 * jacobian) * p;
    const double p_next = ((2.0 * n + 1.0) * t * p - n * p_prev) / (n + 1.0);
    p_prev = p;
    p = p_next;
  }
  return out;
}

double BicoherentFamily::phi(int n, double x) const {
  if (n < 0 || n >= n_states_) {
    throw ParameterError("phi: index out of range");
  }
  return phis(x)[n];
}

double BicoherentFamily::dressed_phi(int n, double x) const { return std::exp(alpha_(x)) * phi(n, x); }
double BicoherentFamily::dressed_psi(int n, double x) const { return std::exp(-alpha_(x)) * phi(n, x); }

double BicoherentFamily::n_tilde(double x) const {
  const double up = std::exp(alpha_(x));
  const double down = std::exp(-alpha_(x));
  double sum = 0.0;
  for (double p : phis(x)) sum += (up * p) * (down * p);
  return sum;
}

double BicoherentFamily::n_plain(double x) const {
  double sum = 0.0;
  for (double p : phis(x)) sum += p * p;
  return sum;
}

BicoherentFamily build_family(int n_states, RealFunction alpha, const Matrix& h, const Matrix& e,
                              int quadrature_order, double x_lo, double x_hi) {
  if (n_states < 1) {
    throw ParameterError("build_family: n_states must be >= 1");
  }
  if (!alpha) {
    throw ParameterError("build_family: alpha function is empty");
  }
  if (h.rows() != n_states || h.cols() != n_states || e.rows() != n_states || e.cols() != n_states) {
    throw ParameterError("build_family: vector bases must be " + std::to_string(n_states) +
                         " x " + std::to_string(n_states));
  }
  if (relative_residual(e.adjoint() * h, Matrix::Identity(n_states, n_states)) > 1e-10) {
    throw ParameterError("build_family: vector bases are not biorthonormal");
  }
  BicoherentFamily family(n_states, std::move(alpha), h, e,
                          gauss_legendre(quadrature_order, x_lo, x_hi), x_lo, x_hi);
  for (double x : family.quadrature().nodes) {
    const double nt = family.n_tilde(x);
    if (!(nt > 0.0) || !std::isfinite(nt)) {
      throw NumericalError("build_family: N~(x) is not strictly positive at x = " + std::to_string(x));
    }
  }
  return family;
}

BicoherentFamily build_family(int n_states, RealFunction alpha, int quadrature_order) {
  if (n_states < 1) {
    throw ParameterError("build_family: n_states must be >= 1");
  }
  const Matrix id = Matrix::Identity(n_states, n_states);
  return build_family(n_states, std::move(alpha), id, id, quadrature_order);
}

BicoherentFamily build_family(int n_states, RealFunction alpha, const BlockBasis& basis,
                              int quadrature_order) {
  return build_family(n_states, std::move(alpha), basis.h, basis.e, quadrature_order);
}

std::pair<Vector, Vector> states_at(const BicoherentFamily& family, double x) {
  if (!(x >= family.x_lo() && x <= family.x_hi())) {
    throw ParameterError("states_at: x = " + std::to_string(x) + " lies outside the domain");
  }
  const double nt = family.n_tilde(x);
  if (!(nt > 0.0)) {
    throw ParameterError("states_at: N~(x) vanishes at x = " + std::to_string(x));
  }
  const double scale = 1.0 / std::sqrt(nt);
  Vector e_state = Vector::Zero(family.n_states());
  Vector h_state = Vector::Zero(family.n_states());
  for (int n = 0; n < family.n_states(); ++n) {
    e_state += (family.dressed_phi(n, x) * scale) * family.e().col(n);
    h_state += (family.dressed_psi(n, x) * scale) * family.h().col(n);
  }
  return {std::move(e_state), std::move(h_state)};
}

double function_biorthogonality_residual(const BicoherentFamily& family) {
  const int n = family.n_states();
  const QuadratureRule& q = family.quadrature();
  double worst = 0.0;
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        sum += q.weights[i] * family.dressed_psi(m, q.nodes[i]) * family.dressed_phi(k, q.nodes[i]);
      }
      worst = std::max(worst, std::abs(sum - (m == k ? 1.0 : 0.0)));
    }
  }
  return worst;
}

Matrix upper_symbol(const BicoherentFamily& family, const RealFunction& classical) {
  const int n = family.n_states();
  const QuadratureRule& q = family.quadrature();
  Matrix op = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const double x = q.nodes[i];
    const auto [e_state, h_state] = states_at(family, x);
    op += (q.weights[i] * classical(x) * family.n_tilde(x)) * (e_state * h_state.adjoint());
  }
  return op;
}

OperatorResidual resolution_of_identity(const BicoherentFamily& family) {
  OperatorResidual out;
  out.op = upper_symbol(family, [](double) { return 1.0; });
  out.residual = max_abs(out.op - Matrix::Identity(family.n_states(), family.n_states()));
  return out;
}

}  // namespace pfl
