#include "pfl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pfl {

HermitianEigen hermitian_eigen(const Matrix& m, double phase_tol) {
  if (m.rows() != m.cols()) {
    throw ParameterError("hermitian_eigen: matrix is not square");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eigen: eigensolver did not converge");
  }
  HermitianEigen out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index j = 0; j < out.vectors.cols(); ++j) {
    auto col = out.vectors.col(j);
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      const double mod = std::abs(col(i));
      if (mod > phase_tol) {
        col *= std::conj(col(i)) / mod;
        col(i) = Complex(std::abs(col(i)), 0.0);
        break;
      }
    }
  }
  return out;
}

Matrix positive_sqrt(const Matrix& m, double floor) {
  const HermitianEigen eig = hermitian_eigen(m);
  if (eig.values.size() == 0) {
    return m;
  }
  if (eig.values(0) <= floor) {
    throw PositivityError("positive_sqrt: least eigenvalue " + std::to_string(eig.values(0)) +
                          " is not above the positivity floor");
  }
  const RealVector roots = eig.values.cwiseSqrt();
  Matrix root = eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  // Symmetrize away rounding so the result is exactly Hermitian.
  return (root + root.adjoint()) / 2.0;
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double relative_residual(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ParameterError("relative_residual: shape mismatch");
  }
  return max_abs(a - b) / std::max(1.0, max_abs(b));
}

double hermiticity_defect(const Matrix& m) {
  return max_abs(m - m.adjoint());
}

double condition_number(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const RealVector& s = svd.singularValues();
  if (s.size() == 0) {
    return 1.0;
  }
  const double smallest = s(s.size() - 1);
  return smallest > 0.0 ? s(0) / smallest : std::numeric_limits<double>::infinity();
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) {
    return 0.0;
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Matrix checked_inverse(const Matrix& m, double rcond_floor) {
  if (m.rows() != m.cols()) {
    throw ParameterError("checked_inverse: matrix is not square");
  }
  Eigen::FullPivLU<Matrix> lu(m);
  if (!lu.isInvertible() || lu.rcond() < rcond_floor) {
    throw NumericalError("checked_inverse: matrix is numerically singular");
  }
  return lu.inverse();
}

Matrix matrix_power(const Matrix& m, int exponent) {
  if (exponent < 0) {
    throw ParameterError("matrix_power: negative exponent");
  }
  Matrix out = Matrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < exponent; ++i) {
    out = out * m;
  }
  return out;
}

}  // namespace pfl
