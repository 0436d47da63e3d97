#include "pfl/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pfl/fock.hpp"

namespace pfl {

namespace {

const double kSqrt2 = std::sqrt(2.0);

Matrix lowering_coordinates(Eigen::Index dim) {
  Matrix d = Matrix::Zero(dim, dim);
  for (Eigen::Index k = 1; k < dim; ++k) d(k - 1, k) = std::sqrt(double(k));
  return d;
}

Matrix raising_coordinates(Eigen::Index dim) {
  Matrix d = Matrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k + 1 < dim; ++k) d(k + 1, k) = std::sqrt(double(k + 1));
  return d;
}

Matrix index_diagonal(Eigen::Index dim) {
  Matrix d = Matrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) d(k, k) = double(k);
  return d;
}

// max|a - b| / max(1, max|b|, max|a|); symmetric variant for defects where
// neither side is a reference.
double scaled_defect(const Matrix& a, const Matrix& b) {
  return max_abs(a - b) / std::max({1.0, max_abs(a), max_abs(b)});
}

void require_square(const Matrix& h, const char* who) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw ParameterError(std::string(who) + ": basis matrix must be square and non-empty");
  }
}

}  // namespace

std::string_view to_string(BasisSource source) {
  switch (source) {
    case BasisSource::cholesky:
      return "cholesky";
    case BasisSource::paper_fixture_m1:
      return "paper_fixture_m1";
    case BasisSource::paper_fixture_m2:
      return "paper_fixture_m2";
    case BasisSource::user_supplied:
      return "user_supplied";
  }
  return "unknown";
}

BlockBasis realize_basis_cholesky(const GramBlock& gram, double positivity_floor) {
  const double least = gram.smallest_eigenvalue();
  if (!(least > positivity_floor)) {
    throw PositivityError("realize_basis_cholesky: Gram matrix at level " +
                          std::to_string(gram.level) + " has least eigenvalue " +
                          std::to_string(least) + " (|gamma| too close to 1?)");
  }
  Eigen::LLT<Matrix> llt(gram.matrix);
  if (llt.info() != Eigen::Success) {
    throw PositivityError("realize_basis_cholesky: Cholesky factorization failed");
  }
  BlockBasis basis;
  basis.level = gram.level;
  basis.h = llt.matrixU();
  basis.e = checked_inverse(basis.h.adjoint());
  basis.source = BasisSource::cholesky;
  return basis;
}

BlockBasis paper_fixture(int level, double gamma) {
  if (!(gamma > 0.0)) {
    throw ParameterError("paper_fixture: gamma must be > 0");
  }
  BlockBasis basis;
  basis.level = level;
  const double g = gamma;
  if (level == 1) {
    const double r = std::sqrt(g);
    basis.h.resize(2, 2);
    basis.h << r, r,
               0, r;
    basis.e.resize(2, 2);
    basis.e << 1.0 / r, 0.0,
               -1.0 / r, 1.0 / r;
    basis.source = BasisSource::paper_fixture_m1;
  } else if (level == 2) {
    basis.h.resize(3, 3);
    basis.h << g * kSqrt2, 1.0, g / kSqrt2,
               0.0, g / kSqrt2, 1.0,
               0.0, 0.0, 1.0;
    const double g2 = g * g;
    basis.e.resize(3, 3);
    basis.e << (g / kSqrt2) / g2, 0.0, 0.0,
               -1.0 / g2, kSqrt2 / g, 0.0,
               (1.0 - g2 / 2.0) / g2, -kSqrt2 / g, 1.0;
    basis.source = BasisSource::paper_fixture_m2;
  } else {
    throw ParameterError("paper_fixture: level must be 1 or 2, got " + std::to_string(level));
  }
  return basis;
}

BlockBasis user_basis(const Matrix& h) {
  require_square(h, "user_basis");
  BlockBasis basis;
  basis.level = int(h.cols()) - 1;
  basis.h = h;
  basis.e = checked_inverse(h.adjoint());
  basis.source = BasisSource::user_supplied;
  return basis;
}

Ladders synthesize_ladders(const Matrix& h) {
  require_square(h, "synthesize_ladders");
  const Matrix h_inv = checked_inverse(h);
  const Eigen::Index dim = h.cols();
  return {h * lowering_coordinates(dim) * h_inv, h * raising_coordinates(dim) * h_inv};
}

Matrix dual_basis_by_kernel(const Matrix& h, const Ladders& ladders, double kernel_tol) {
  require_square(h, "dual_basis_by_kernel");
  const Eigen::Index dim = h.cols();
  const Matrix b_adj = ladders.b.adjoint();
  Eigen::JacobiSVD<Matrix> svd(b_adj, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  const double threshold = kernel_tol * (s.size() > 0 ? s(0) : 0.0);
  const auto kernel_dim = (s.array() <= threshold).count();
  if (kernel_dim != 1) {
    throw NumericalError("dual_basis_by_kernel: kernel of b^dagger has dimension " +
                         std::to_string(kernel_dim) + ", expected 1");
  }

  Matrix e(dim, dim);
  Vector e0 = svd.matrixV().col(dim - 1);
  const Complex pairing = e0.dot(h.col(0));  // <e0, h0>
  if (std::abs(pairing) < std::numeric_limits<double>::epsilon()) {
    throw NumericalError("dual_basis_by_kernel: kernel vector is orthogonal to h_0");
  }
  e.col(0) = e0 / std::conj(pairing);
  const Matrix a_adj = ladders.a.adjoint();
  for (Eigen::Index k = 0; k + 1 < dim; ++k) {
    e.col(k + 1) = a_adj * e.col(k) / std::sqrt(double(k + 1));
  }
  return e;
}

BlockSystem build_block_system(const BlockBasis& basis, double tol) {
  require_square(basis.h, "build_block_system");
  const Matrix& h = basis.h;
  const Matrix& e = basis.e;

  BlockSystem sys;
  sys.basis = basis;
  Ladders ladders = synthesize_ladders(h);
  sys.a = std::move(ladders.a);
  sys.b = std::move(ladders.b);
  sys.number = sys.b * sys.a;
  sys.s_h = h * h.adjoint();
  sys.s_e = e * e.adjoint();
  // S_e = (h h^dagger)^{-1} shares its eigenvectors with S_h, and the SVD
  // h = U sigma V^dagger yields them without squaring the condition number:
  // sqrt(S_e) = U sigma^{-1} U^dagger.
  const Eigen::JacobiSVD<Matrix> svd(h, Eigen::ComputeFullU);
  const RealVector& sigma = svd.singularValues();
  if (!(sigma.minCoeff() > 0.0) || 1.0 / (sigma(0) * sigma(0)) <= kPositivityFloor) {
    throw PositivityError("build_block_system: S_e is not safely positive definite at level " +
                          std::to_string(basis.level));
  }
  const Matrix& u = svd.matrixU();
  sys.sqrt_s_e = u * sigma.cwiseInverse().cast<Complex>().asDiagonal() * u.adjoint();
  sys.sqrt_s_e = (sys.sqrt_s_e + sys.sqrt_s_e.adjoint()) / 2.0;
  sys.inv_sqrt_s_e = u * sigma.cast<Complex>().asDiagonal() * u.adjoint();
  sys.inv_sqrt_s_e = (sys.inv_sqrt_s_e + sys.inv_sqrt_s_e.adjoint()) / 2.0;
  sys.n_selfadjoint = sys.sqrt_s_e * sys.number * sys.inv_sqrt_s_e;
  sys.c = sys.sqrt_s_e * h;
  sys.kernel_dual = dual_basis_by_kernel(h, {sys.a, sys.b});

  const Matrix anticommutator = sys.a * sys.b + sys.b * sys.a;
  const Matrix coords = e.adjoint() * anticommutator * h;
  sys.anticommutator_diagonal = coords.diagonal().real();
  Matrix off = coords;
  off.diagonal().setZero();
  sys.anticommutator_offdiagonal = max_abs(off);
  const double scale = std::max(1.0, sys.anticommutator_diagonal.cwiseAbs().maxCoeff());
  if (sys.anticommutator_offdiagonal > tol * scale) {
    throw NumericalError("build_block_system: e^dagger {a,b} h is not diagonal (off-diagonal " +
                         std::to_string(sys.anticommutator_offdiagonal) + ")");
  }
  return sys;
}

Check make_check(std::string name, double residual, double tolerance) {
  // NaN residuals fail.
  return {std::move(name), residual, tolerance, residual <= tolerance};
}

std::vector<Check> block_checks(const BlockSystem& sys, double tol) {
  const Eigen::Index dim = sys.basis.dim();
  const int level = sys.level();
  const Matrix& h = sys.basis.h;
  const Matrix& e = sys.basis.e;
  const Matrix id = Matrix::Identity(dim, dim);
  const Matrix ks = index_diagonal(dim);
  std::vector<Check> checks;

  const auto nilpotent = [&](const Matrix& m) {
    const double base = std::max(1.0, max_abs(m));
    return max_abs(matrix_power(m, level + 1)) / std::pow(base, level + 1);
  };
  checks.push_back(make_check("nilpotency_a", nilpotent(sys.a), tol));
  checks.push_back(make_check("nilpotency_b", nilpotent(sys.b), tol));
  checks.push_back(make_check("biorthonormality", relative_residual(e.adjoint() * h, id), tol));
  checks.push_back(make_check("lowering_action", scaled_defect(sys.a * h, h * lowering_coordinates(dim)), tol));
  checks.push_back(make_check("raising_action", scaled_defect(sys.b * h, h * raising_coordinates(dim)), tol));
  checks.push_back(make_check("number_spectrum_h", scaled_defect(sys.number * h, h * ks), tol));
  checks.push_back(make_check("number_adjoint_spectrum_e", scaled_defect(sys.number.adjoint() * e, e * ks), tol));
  checks.push_back(make_check("s_h_s_e_identity", relative_residual(sys.s_h * sys.s_e, id), tol));
  checks.push_back(make_check("s_h_hermitian", hermiticity_defect(sys.s_h) / std::max(1.0, max_abs(sys.s_h)), tol));
  checks.push_back(make_check("s_e_hermitian", hermiticity_defect(sys.s_e) / std::max(1.0, max_abs(sys.s_e)), tol));
  checks.push_back(make_check("intertwining_s_e", scaled_defect(sys.s_e * sys.number, sys.number.adjoint() * sys.s_e), tol));
  checks.push_back(make_check("intertwining_s_h", scaled_defect(sys.number * sys.s_h, sys.s_h * sys.number.adjoint()), tol));
  checks.push_back(make_check("s_h_maps_e_to_h", scaled_defect(sys.s_h * e, h), tol));
  checks.push_back(make_check("s_e_maps_h_to_e", scaled_defect(sys.s_e * h, e), tol));
  checks.push_back(make_check("resolution_e_h", relative_residual(e * h.adjoint(), id), tol));
  checks.push_back(make_check("resolution_h_e", relative_residual(h * e.adjoint(), id), tol));
  checks.push_back(make_check("sqrt_s_e_squares", scaled_defect(sys.sqrt_s_e * sys.sqrt_s_e, sys.s_e), tol));
  checks.push_back(make_check("n_selfadjoint_hermitian", hermiticity_defect(sys.n_selfadjoint) / std::max(1.0, max_abs(sys.n_selfadjoint)), tol));

  const RealVector n_spectrum = hermitian_eigen((sys.n_selfadjoint + sys.n_selfadjoint.adjoint()) / 2.0).values;
  RealVector expected_spectrum(dim);
  for (Eigen::Index k = 0; k < dim; ++k) expected_spectrum(k) = double(k);
  checks.push_back(make_check("n_selfadjoint_spectrum", (n_spectrum - expected_spectrum).cwiseAbs().maxCoeff() / std::max(1.0, double(level)), tol));
  checks.push_back(make_check("n_selfadjoint_eigenvectors_c", scaled_defect(sys.n_selfadjoint * sys.c, sys.c * ks), tol));
  checks.push_back(make_check("c_orthonormal", relative_residual(sys.c.adjoint() * sys.c, id), tol));
  checks.push_back(make_check("dual_basis_routes_agree", scaled_defect(sys.kernel_dual, e), tol));

  RealVector expected_alpha(dim);
  for (Eigen::Index k = 0; k < dim; ++k) expected_alpha(k) = (k < level) ? double(2 * k + 1) : double(level);
  checks.push_back(make_check("anticommutator_diagonal", (sys.anticommutator_diagonal - expected_alpha).cwiseAbs().maxCoeff() / std::max(1.0, expected_alpha.maxCoeff()), tol));
  checks.push_back(make_check("anticommutator_offdiagonal", sys.anticommutator_offdiagonal / std::max(1.0, expected_alpha.maxCoeff()), tol));
  return checks;
}

double DeformedNumberOperators::m1_action_residual() const {
  const Eigen::Index dim = phi.cols();
  Matrix expected = phi;
  for (Eigen::Index j = 0; j < dim; ++j) expected.col(j) *= double(level - j);
  return max_abs(m1 * phi - expected);
}

double DeformedNumberOperators::m2_action_residual() const {
  const Eigen::Index dim = phi.cols();
  Matrix expected = phi;
  for (Eigen::Index j = 0; j < dim; ++j) expected.col(j) *= double(j);
  return max_abs(m2 * phi - expected);
}

double DeformedNumberOperators::h_action_residual() const {
  return max_abs(hamiltonian * phi - double(level) * phi);
}

double DeformedNumberOperators::commutator_residual() const {
  return max_abs((m1 * m2 - m2 * m1) * phi);
}

DeformedNumberOperators deformed_number_operators(const NCBosonParams& params, int level) {
  if (level < 0 || level >= kMaxLevel) {
    throw ParameterError("deformed_number_operators: level out of range");
  }
  const Complex gamma = params.gamma();
  const double denom = 1.0 - std::norm(gamma);
  if (std::abs(denom) < 1e-12) {
    throw ParameterError("deformed_number_operators: |gamma| = 1 is excluded");
  }

  DeformedNumberOperators out;
  out.level = level;
  out.cutoff = level + 1;
  out.gamma = gamma;

  const FockRep rep = build_fock_rep(out.cutoff);
  const Matrix a1 = params.alpha_x() * rep.a_x + params.alpha_y() * rep.a_y;
  const Matrix a2 = params.beta_x() * rep.a_x + params.beta_y() * rep.a_y;
  const Matrix a1_adj = a1.adjoint();
  const Matrix a2_adj = a2.adjoint();
  out.m1 = (a1_adj * a1 - gamma * a1_adj * a2) / denom;
  out.m2 = (a2_adj * a2 - std::conj(gamma) * a2_adj * a1) / denom;
  out.hamiltonian = out.m1 + out.m2;

  out.phi.resize(rep.dim(), level + 1);
  for (int j = 0; j <= level; ++j) {
    out.phi.col(j) = fock_expand_oracle(level - j, j, params, out.cutoff);
  }
  const Eigen::ColPivHouseholderQR<Matrix> qr(out.phi);
  out.m1_restricted = qr.solve(out.m1 * out.phi);
  out.m2_restricted = qr.solve(out.m2 * out.phi);
  out.h_restricted = qr.solve(out.hamiltonian * out.phi);
  return out;
}

}  // namespace pfl
