#include <gtest/gtest.h>

#include "pfl/linalg.hpp"

using namespace pfl;

TEST(Linalg, HermitianEigenAscendingWithPhaseFix) {
  Matrix m(2, 2);
  m << 2.0, Complex(0.0, 1.0),
       Complex(0.0, -1.0), 2.0;
  const HermitianEigen eig = hermitian_eigen(m);
  EXPECT_NEAR(eig.values(0), 1.0, 1e-14);
  EXPECT_NEAR(eig.values(1), 3.0, 1e-14);
  for (int j = 0; j < 2; ++j) {
    EXPECT_NEAR(eig.vectors(0, j).imag(), 0.0, 1e-15);
    EXPECT_GT(eig.vectors(0, j).real(), 0.0);
  }
  EXPECT_LT(max_abs(m * eig.vectors - eig.vectors * eig.values.cast<Complex>().asDiagonal()), 1e-14);
}

TEST(Linalg, PositiveSqrtOfKnownMatrix) {
  // [[2,-1],[-1,3]]^2 = [[5,-5],[-5,10]]
  Matrix root(2, 2);
  root << 2, -1, -1, 3;
  const Matrix m = root * root;
  EXPECT_LT(max_abs(positive_sqrt(m) - root), 1e-13);
}

TEST(Linalg, PositiveSqrtRejectsIndefinite) {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  EXPECT_THROW(positive_sqrt(m), PositivityError);
}

TEST(Linalg, CheckedInverseRejectsSingular) {
  Matrix m(2, 2);
  m << 1, 2, 2, 4;
  EXPECT_THROW(checked_inverse(m), NumericalError);
}

TEST(Linalg, RelativeResidualScalesByReference) {
  Matrix a = Matrix::Constant(2, 2, 1000.0 + 1e-8);
  Matrix b = Matrix::Constant(2, 2, 1000.0);
  EXPECT_NEAR(relative_residual(a, b), 1e-11, 1e-13);
  EXPECT_THROW(relative_residual(Matrix::Zero(2, 2), Matrix::Zero(3, 3)), ParameterError);
}

TEST(Linalg, MatrixPowerAndNorms) {
  Matrix shift = Matrix::Zero(3, 3);
  shift(0, 1) = 1.0;
  shift(1, 2) = 1.0;
  EXPECT_EQ(max_abs(matrix_power(shift, 3)), 0.0);
  EXPECT_NEAR(spectral_norm(2.0 * Matrix::Identity(3, 3)), 2.0, 1e-15);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 4.0;
  EXPECT_NEAR(condition_number(d), 4.0, 1e-14);
}
