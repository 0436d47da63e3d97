#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "pfl/fock.hpp"

using namespace pfl;

namespace {

// Permutation matrix taking the mode-x-major ordering to mode-y-major.
Matrix swap_ordering(int cutoff) {
  const int d = cutoff + 1;
  Matrix p = Matrix::Zero(d * d, d * d);
  for (int nx = 0; nx < d; ++nx) {
    for (int ny = 0; ny < d; ++ny) p(ny * d + nx, nx * d + ny) = 1.0;
  }
  return p;
}

}  // namespace

TEST(FockRep, SingleModeLoweringAtCutoffOne) {
  Matrix expected(2, 2);
  expected << 0, 1, 0, 0;
  EXPECT_EQ(max_abs(truncated_lowering(1) - expected), 0.0);

  const FockRep rep = build_fock_rep(1);
  // <nx=0, ny=0| a_x |nx=1, ny=0>
  EXPECT_EQ(rep.a_x(rep.index(0, 0), rep.index(1, 0)), Complex(1.0, 0.0));
  EXPECT_EQ(rep.a_x(rep.index(0, 1), rep.index(1, 1)), Complex(1.0, 0.0));
}

TEST(FockRep, SuperdiagonalIsSqrtN) {
  const Matrix a = truncated_lowering(2);
  EXPECT_DOUBLE_EQ(a(0, 1).real(), 1.0);
  EXPECT_DOUBLE_EQ(a(1, 2).real(), std::sqrt(2.0));
}

TEST(FockRep, DistinctModesCommute) {
  const FockRep rep = build_fock_rep(3);
  EXPECT_LT(max_abs(rep.a_x * rep.a_y - rep.a_y * rep.a_x), 1e-15);
}

TEST(FockRep, CanonicalCommutatorBelowTopLevel) {
  const int cutoff = 4;
  const FockRep rep = build_fock_rep(cutoff);
  const Matrix comm = rep.a_x * rep.a_x.adjoint() - rep.a_x.adjoint() * rep.a_x;
  for (int nx = 0; nx <= cutoff; ++nx) {
    for (int ny = 0; ny <= cutoff; ++ny) {
      const auto i = rep.index(nx, ny);
      const double expected = nx < cutoff ? 1.0 : -double(cutoff);
      EXPECT_NEAR(comm(i, i).real(), expected, 1e-13) << nx << "," << ny;
    }
  }
  Matrix off = comm;
  off.diagonal().setZero();
  EXPECT_LT(max_abs(off), 1e-14);
}

TEST(FockRep, RejectsCutoffBelowOne) {
  EXPECT_THROW(build_fock_rep(0), ParameterError);
  EXPECT_THROW(build_fock_rep(-3), ParameterError);
}

TEST(NoGo, ThetaZeroReducesToScaledLowering) {
  const FockRep rep = build_fock_rep(5);
  const auto [l1, l2] = nogo_operators(rep, 0.0);
  EXPECT_LT(max_abs(l1 - std::sqrt(2.0) * rep.a_x), 1e-15);
  EXPECT_LT(max_abs(l2 - std::sqrt(2.0) * rep.a_y), 1e-15);
}

TEST(NoGo, VacuumAnnihilatedAtThetaZeroForEveryCutoff) {
  for (int cutoff : {2, 3, 6, 10}) {
    const FockRep rep = build_fock_rep(cutoff);
    Vector vacuum = Vector::Zero(rep.dim());
    vacuum(rep.index(0, 0)) = 1.0;
    const Matrix stacked = stacked_nogo_operator(rep, 0.0);
    EXPECT_EQ((stacked * vacuum).cwiseAbs().maxCoeff(), 0.0) << cutoff;
  }
}

TEST(NoGo, GaussianVacuumIsTheOnlyKernelVector) {
  const std::vector<int> cutoffs{8};
  const NoGoReport report = nogo_joint_kernel(0.0, cutoffs);
  EXPECT_EQ(report.kernel_dimension_estimate, 1);
  EXPECT_LE(report.min_singular_values[0], 1e-12);

  const std::vector<int> small{4};
  EXPECT_LE(nogo_joint_kernel(0.0, small).min_singular_values[0], 1e-12);
}

// Floors frozen from an independent dense SVD (numpy) of the same stacked
// operator at cutoff 16.
TEST(NoGo, FloorDoesNotDecayWithCutoff) {
  const std::vector<int> cutoffs{4, 8, 12, 16};
  const struct {
    double theta;
    double floor;
  } cases[] = {{0.3, 0.14958222359514659}, {0.5, 0.24809839340235615}, {1.0, 0.4858682717566456}};
  for (const auto& c : cases) {
    const NoGoReport report = nogo_joint_kernel(c.theta, cutoffs);
    ASSERT_EQ(report.min_singular_values.size(), cutoffs.size());
    EXPECT_TRUE(report.floor_non_decreasing(1e-9)) << c.theta;
    EXPECT_EQ(report.kernel_dimension_estimate, 0);
    EXPECT_NEAR(report.min_singular_values.back(), c.floor, 1e-9) << c.theta;
    for (double s : report.min_singular_values) EXPECT_GT(s, 0.1);
  }
}

TEST(NoGo, SingularValuesIndependentOfProductOrdering) {
  const int cutoff = 5;
  const FockRep rep = build_fock_rep(cutoff);
  const Matrix stacked = stacked_nogo_operator(rep, 0.7);
  const Matrix p = swap_ordering(cutoff);
  Matrix row_perm = Matrix::Zero(2 * p.rows(), 2 * p.cols());
  row_perm.topLeftCorner(p.rows(), p.cols()) = p;
  row_perm.bottomRightCorner(p.rows(), p.cols()) = p;
  const Matrix permuted = row_perm * stacked * p.transpose();
  const RealVector s1 = Eigen::JacobiSVD<Matrix>(stacked).singularValues();
  const RealVector s2 = Eigen::JacobiSVD<Matrix>(permuted).singularValues();
  EXPECT_LT((s1 - s2).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(NoGo, RejectsBadCutoffLists) {
  const std::vector<int> empty;
  EXPECT_THROW(nogo_joint_kernel(0.5, empty), ParameterError);
  const std::vector<int> decreasing{8, 4};
  EXPECT_THROW(nogo_joint_kernel(0.5, decreasing), ParameterError);
  const std::vector<int> repeated{4, 4};
  EXPECT_THROW(nogo_joint_kernel(0.5, repeated), ParameterError);
  const std::vector<int> too_small{1, 4};
  EXPECT_THROW(nogo_joint_kernel(0.5, too_small), ParameterError);
}

TEST(NoGoReport, MinSingularValuesNonNegativeAndAligned) {
  const std::vector<int> cutoffs{2, 3, 5};
  const NoGoReport report = nogo_joint_kernel(0.2, cutoffs);
  EXPECT_EQ(report.cutoffs.size(), report.min_singular_values.size());
  for (double s : report.min_singular_values) EXPECT_GE(s, 0.0);
}
