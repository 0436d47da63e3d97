#include "pfl/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pfl {

namespace {

BlockBasis level_basis(Complex gamma, int level, Realization realization) {
  if (realization == Realization::paper_fixture && level > 0) {
    return paper_fixture(level, gamma.real());
  }
  return realize_basis_cholesky(gram_block(level, gamma));
}

void embed(Matrix& target, Eigen::Index offset, const Matrix& block) {
  target.block(offset, offset, block.rows(), block.cols()) = block;
}

}  // namespace

Vector GlobalOperators::h_vector(int level, int k) const {
  Vector v = Vector::Zero(total_dim);
  v.segment(offsets.at(level), level + 1) = blocks.at(level).basis.h.col(k);
  return v;
}

Vector GlobalOperators::e_vector(int level, int k) const {
  Vector v = Vector::Zero(total_dim);
  v.segment(offsets.at(level), level + 1) = blocks.at(level).basis.e.col(k);
  return v;
}

GlobalOperators assemble(Complex gamma, int max_level, Realization realization) {
  if (max_level < 0 || max_level > kMaxLevel) {
    throw ParameterError("assemble: max_level out of range");
  }
  if (!(std::abs(gamma) < 1.0)) {
    throw ParameterError("assemble: |gamma| must be < 1");
  }
  if (realization == Realization::paper_fixture) {
    if (max_level > 2) {
      throw ParameterError("assemble: paper-fixture realization supports max_level <= 2");
    }
    if (gamma.imag() != 0.0 || !(gamma.real() > 0.0)) {
      throw ParameterError("assemble: paper-fixture realization needs real gamma > 0");
    }
  }

  GlobalOperators ops;
  ops.max_level = max_level;
  ops.gamma = gamma;
  ops.realization = realization;
  for (int m = 0; m <= max_level; ++m) {
    ops.offsets.push_back(ops.total_dim);
    ops.total_dim += m + 1;
  }
  const Eigen::Index n = ops.total_dim;
  ops.A = Matrix::Zero(n, n);
  ops.B = Matrix::Zero(n, n);
  ops.S_h = Matrix::Zero(n, n);
  ops.S_e = Matrix::Zero(n, n);

  for (int m = 0; m <= max_level; ++m) {
    ops.blocks.push_back(build_block_system(level_basis(gamma, m, realization)));
    const BlockSystem& sys = ops.blocks.back();
    const Eigen::Index off = ops.offsets[m];
    embed(ops.A, off, sys.a);
    embed(ops.B, off, sys.b);
    embed(ops.S_h, off, sys.s_h);
    embed(ops.S_e, off, sys.s_e);

    // Within H_M, sum_l |e_l><h_l| is the identity, so P_M is the block identity.
    Matrix p = Matrix::Zero(n, n);
    embed(p, off, sys.basis.e * sys.basis.h.adjoint());
    ops.projections.push_back(std::move(p));
  }
  ops.N = ops.B * ops.A;
  ops.N_sharp = ops.A.adjoint() * ops.B.adjoint();
  return ops;
}

GlobalOperators assemble(const NCBosonParams& params, int max_level, Realization realization) {
  return assemble(params.gamma(), max_level, realization);
}

std::vector<Check> action_checks(const GlobalOperators& ops, double tol) {
  double lower_h = 0.0, raise_h = 0.0, lower_adj_e = 0.0, raise_adj_e = 0.0;
  double number_h = 0.0, number_sharp_e = 0.0;
  const Matrix A_adj = ops.A.adjoint();
  const Matrix B_adj = ops.B.adjoint();
  for (int m = 0; m <= ops.max_level; ++m) {
    for (int k = 0; k <= m; ++k) {
      const Vector h = ops.h_vector(m, k);
      const Vector e = ops.e_vector(m, k);
      const double hs = std::max(1.0, h.cwiseAbs().maxCoeff());
      const double es = std::max(1.0, e.cwiseAbs().maxCoeff());

      const Vector a_h = k == 0 ? Vector::Zero(ops.total_dim) : Vector(std::sqrt(double(k)) * ops.h_vector(m, k - 1));
      const Vector b_h = k == m ? Vector::Zero(ops.total_dim) : Vector(std::sqrt(double(k + 1)) * ops.h_vector(m, k + 1));
      const Vector ad_e = k == m ? Vector::Zero(ops.total_dim) : Vector(std::sqrt(double(k + 1)) * ops.e_vector(m, k + 1));
      const Vector bd_e = k == 0 ? Vector::Zero(ops.total_dim) : Vector(std::sqrt(double(k)) * ops.e_vector(m, k - 1));

      lower_h = std::max(lower_h, (ops.A * h - a_h).cwiseAbs().maxCoeff() / hs);
      raise_h = std::max(raise_h, (ops.B * h - b_h).cwiseAbs().maxCoeff() / hs);
      lower_adj_e = std::max(lower_adj_e, (A_adj * e - ad_e).cwiseAbs().maxCoeff() / es);
      raise_adj_e = std::max(raise_adj_e, (B_adj * e - bd_e).cwiseAbs().maxCoeff() / es);
      number_h = std::max(number_h, (ops.N * h - double(k) * h).cwiseAbs().maxCoeff() / hs);
      number_sharp_e = std::max(number_sharp_e, (ops.N_sharp * e - double(k) * e).cwiseAbs().maxCoeff() / es);
    }
  }

  const Eigen::Index n = ops.total_dim;
  double idempotent = 0.0, selfadjoint = 0.0, orthogonal = 0.0, commute = 0.0;
  Matrix sum = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < ops.projections.size(); ++i) {
    const Matrix& p = ops.projections[i];
    sum += p;
    idempotent = std::max(idempotent, max_abs(p * p - p));
    selfadjoint = std::max(selfadjoint, hermiticity_defect(p));
    commute = std::max({commute, max_abs(ops.A * p - p * ops.A), max_abs(ops.B * p - p * ops.B)});
    for (std::size_t j = 0; j < ops.projections.size(); ++j) {
      if (i != j) orthogonal = std::max(orthogonal, max_abs(p * ops.projections[j]));
    }
  }

  return {
      make_check("A_lowers_h", lower_h, tol),
      make_check("B_raises_h", raise_h, tol),
      make_check("A_adjoint_raises_e", lower_adj_e, tol),
      make_check("B_adjoint_lowers_e", raise_adj_e, tol),
      make_check("N_eigen_h", number_h, tol),
      make_check("N_sharp_eigen_e", number_sharp_e, tol),
      make_check("projections_idempotent", idempotent, tol),
      make_check("projections_selfadjoint", selfadjoint, tol),
      make_check("projections_mutually_orthogonal", orthogonal, tol),
      make_check("projections_sum_to_identity", relative_residual(sum, Matrix::Identity(n, n)), tol),
      make_check("ladders_commute_with_projections", commute, tol),
  };
}

ResolutionReport global_resolution_check(const GlobalOperators& ops) {
  ResolutionReport report;
  const Eigen::Index n = ops.total_dim;
  Matrix sum = Matrix::Zero(n, n);
  const Matrix defect_op = ops.S_e * ops.N - ops.N.adjoint() * ops.S_e;
  for (int m = 0; m <= ops.max_level; ++m) {
    for (int k = 0; k <= m; ++k) {
      const Vector h = ops.h_vector(m, k);
      sum += ops.e_vector(m, k) * h.adjoint();
      report.intertwining_defect =
          std::max(report.intertwining_defect, (defect_op * h).cwiseAbs().maxCoeff());
    }
    const BlockSystem& sys = ops.blocks[m];
    report.s_h_norms.push_back(spectral_norm(sys.s_h));
    report.s_e_norms.push_back(spectral_norm(sys.s_e));
    report.s_h_conditions.push_back(condition_number(sys.s_h));
    report.s_e_conditions.push_back(condition_number(sys.s_e));
  }
  report.resolution_residual = max_abs(sum - Matrix::Identity(n, n));
  return report;
}

}  // namespace pfl
