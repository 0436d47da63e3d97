#include <gtest/gtest.h>

#include <cmath>

#include "pfl/assembly.hpp"

using namespace pfl;

namespace {

double vec_err(const Vector& a, const Vector& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

}  // namespace

TEST(Assembly, DimensionsAndOffsets) {
  const GlobalOperators ops = assemble(0.5, 4);
  EXPECT_EQ(ops.total_dim, 15);
  ASSERT_EQ(ops.offsets.size(), 5u);
  for (int m = 0; m <= 4; ++m) EXPECT_EQ(ops.offsets[m], m * (m + 1) / 2);
  EXPECT_EQ(ops.A.rows(), 15);
  EXPECT_EQ(ops.projections.size(), 5u);
}

TEST(Assembly, LadderTableOnEveryVector) {
  const GlobalOperators ops = assemble(0.5, 4);
  const auto dim = ops.total_dim;
  const Vector zero = Vector::Zero(dim);
  for (int m = 0; m <= 4; ++m) {
    for (int k = 0; k <= m; ++k) {
      const Vector h = ops.h_vector(m, k);
      const Vector e = ops.e_vector(m, k);
      const double sk = std::sqrt(double(k));
      const double sk1 = std::sqrt(double(k + 1));
      EXPECT_LT(vec_err(ops.A * h, k == 0 ? zero : Vector(sk * ops.h_vector(m, k - 1))), 1e-10);
      EXPECT_LT(vec_err(ops.B * h, k == m ? zero : Vector(sk1 * ops.h_vector(m, k + 1))), 1e-10);
      EXPECT_LT(vec_err(ops.A.adjoint() * e, k == m ? zero : Vector(sk1 * ops.e_vector(m, k + 1))), 1e-10);
      EXPECT_LT(vec_err(ops.B.adjoint() * e, k == 0 ? zero : Vector(sk * ops.e_vector(m, k - 1))), 1e-10);
      EXPECT_LT(vec_err(ops.N * h, double(k) * h), 1e-10);
      EXPECT_LT(vec_err(ops.N_sharp * e, double(k) * e), 1e-10);
    }
  }
}

TEST(Assembly, ActionChecksPass) {
  for (const Complex& g : {Complex(0.0), Complex(0.5), Complex(0.3, 0.4)}) {
    for (const Check& c : action_checks(assemble(g, 4))) EXPECT_TRUE(c.pass) << g << " " << c.name;
  }
}

TEST(Assembly, ProjectionsResolveIdentity) {
  const GlobalOperators ops = assemble(Complex(0.2, 0.1), 3);
  Matrix sum = Matrix::Zero(ops.total_dim, ops.total_dim);
  for (std::size_t i = 0; i < ops.projections.size(); ++i) {
    const Matrix& p = ops.projections[i];
    EXPECT_LT(max_abs(p * p - p), 1e-14);
    EXPECT_LT(hermiticity_defect(p), 1e-15);
    for (std::size_t j = 0; j < ops.projections.size(); ++j) {
      if (j != i) EXPECT_LT(max_abs(p * ops.projections[j]), 1e-15);
    }
    sum += p;
  }
  EXPECT_LT(max_abs(sum - Matrix::Identity(ops.total_dim, ops.total_dim)), 1e-15);
}

TEST(Assembly, ResolutionAndUnboundedIntertwiners) {
  const GlobalOperators ops = assemble(0.5, 4);
  const ResolutionReport r = global_resolution_check(ops);
  EXPECT_LE(r.resolution_residual, 1e-10);
  EXPECT_LE(r.intertwining_defect, 1e-8);
  ASSERT_EQ(r.s_h_norms.size(), 5u);
  for (std::size_t m = 1; m < r.s_h_norms.size(); ++m) EXPECT_GT(r.s_h_norms[m], r.s_h_norms[m - 1]);
  // S_h and S_e are mutually inverse per level, so their norms bound each other.
  for (std::size_t m = 0; m < r.s_h_norms.size(); ++m) {
    EXPECT_GE(r.s_h_norms[m] * r.s_e_norms[m], 1.0 - 1e-12);
    EXPECT_NEAR(r.s_h_conditions[m], r.s_e_conditions[m], 1e-8 * r.s_h_conditions[m]);
  }
}

TEST(Assembly, GlobalIntertwining) {
  const GlobalOperators ops = assemble(0.7, 3);
  EXPECT_LT(relative_residual(ops.S_h * ops.S_e, Matrix::Identity(ops.total_dim, ops.total_dim)), 1e-10);
  EXPECT_LT(relative_residual(ops.S_e * ops.N, ops.N.adjoint() * ops.S_e), 1e-9);
  EXPECT_LT(relative_residual(ops.N_sharp, ops.N.adjoint()), 1e-12);
}

TEST(Assembly, FixtureRealization) {
  const GlobalOperators ops = assemble(0.4, 2, Realization::paper_fixture);
  EXPECT_EQ(ops.total_dim, 6);
  for (const Check& c : action_checks(ops)) EXPECT_TRUE(c.pass) << c.name;
  EXPECT_LE(global_resolution_check(ops).resolution_residual, 1e-10);
  EXPECT_EQ(ops.blocks[1].basis.source, BasisSource::paper_fixture_m1);
  EXPECT_EQ(ops.blocks[2].basis.source, BasisSource::paper_fixture_m2);
}

TEST(Assembly, GeneralCoefficientsAgreeWithGamma) {
  const NCBosonParams params = NCBosonParams::from_gamma(Complex(0.3, -0.2));
  const GlobalOperators a = assemble(params, 3);
  const GlobalOperators b = assemble(params.gamma(), 3);
  EXPECT_LT(max_abs(a.A - b.A), 1e-14);
}

TEST(Assembly, RejectsBadInputs) {
  EXPECT_THROW(assemble(0.5, -1), ParameterError);
  EXPECT_THROW(assemble(0.5, 3, Realization::paper_fixture), ParameterError);
  EXPECT_THROW(assemble(Complex(0.5, 0.1), 2, Realization::paper_fixture), ParameterError);
  EXPECT_THROW(assemble(1.0, 2), ParameterError);
}
