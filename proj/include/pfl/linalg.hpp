#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pfl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Invalid input (bad parameter ranges, malformed indices, etc.).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix that must be positive definite is not (within tolerance).
class PositivityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical post-condition failed (singular basis, bad kernel, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // columns, phase-normalized
};

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascending; each
/// eigenvector is rescaled by a unit phase so its first component with
/// modulus above `phase_tol` is real positive.
HermitianEigen hermitian_eigen(const Matrix& m, double phase_tol = 1e-12);

/// Unique positive square root of a Hermitian positive-definite matrix.
/// Throws PositivityError if the least eigenvalue is <= floor.
Matrix positive_sqrt(const Matrix& m, double floor = 1e-12);

/// Largest absolute entry.
double max_abs(const Matrix& m);

/// max|a - b| / max(1, max|b|).
double relative_residual(const Matrix& a, const Matrix& b);

/// max|m - m^dagger|.
double hermiticity_defect(const Matrix& m);

/// 2-norm condition number via singular values.
double condition_number(const Matrix& m);

/// Largest singular value.
double spectral_norm(const Matrix& m);

/// Inverse through a full-pivot LU; throws NumericalError when the matrix is
/// numerically singular (reciprocal condition estimate below rcond_floor).
Matrix checked_inverse(const Matrix& m, double rcond_floor = 1e-14);

/// Integer matrix power by repeated multiplication.
Matrix matrix_power(const Matrix& m, int exponent);

}  // namespace pfl
