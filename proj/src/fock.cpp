#include "pfl/fock.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace pfl {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const Complex kI(0.0, 1.0);

}  // namespace

Matrix truncated_lowering(int cutoff) {
  if (cutoff < 1) {
    throw ParameterError("cutoff must be >= 1, got " + std::to_string(cutoff));
  }
  Matrix a = Matrix::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) {
    a(n - 1, n) = std::sqrt(double(n));
  }
  return a;
}

FockRep build_fock_rep(int cutoff) {
  const Matrix a = truncated_lowering(cutoff);
  const Matrix id = Matrix::Identity(cutoff + 1, cutoff + 1);
  FockRep rep;
  rep.cutoff = cutoff;
  rep.a_x = Eigen::kroneckerProduct(a, id);
  rep.a_y = Eigen::kroneckerProduct(id, a);
  return rep;
}

Matrix FockRep::x() const { return (a_x + a_x.adjoint()) / kSqrt2; }
Matrix FockRep::y() const { return (a_y + a_y.adjoint()) / kSqrt2; }
Matrix FockRep::p_x() const { return (a_x - a_x.adjoint()) / (kI * kSqrt2); }
Matrix FockRep::p_y() const { return (a_y - a_y.adjoint()) / (kI * kSqrt2); }
Matrix FockRep::d_x() const { return (a_x - a_x.adjoint()) / kSqrt2; }
Matrix FockRep::d_y() const { return (a_y - a_y.adjoint()) / kSqrt2; }

std::pair<Matrix, Matrix> nogo_operators(const FockRep& rep, double theta) {
  const Complex shift = kI * (theta / 2.0);
  Matrix l1 = kSqrt2 * rep.a_x + shift * rep.d_y();
  Matrix l2 = kSqrt2 * rep.a_y - shift * rep.d_x();
  return {std::move(l1), std::move(l2)};
}

Matrix stacked_nogo_operator(const FockRep& rep, double theta) {
  auto [l1, l2] = nogo_operators(rep, theta);
  Matrix stacked(l1.rows() + l2.rows(), l1.cols());
  stacked << l1, l2;
  return stacked;
}

bool NoGoReport::floor_non_decreasing(double relative_slack) const {
  for (std::size_t i = 1; i < min_singular_values.size(); ++i) {
    const double prev = min_singular_values[i - 1];
    if (min_singular_values[i] < prev - relative_slack * prev) {
      return false;
    }
  }
  return true;
}

NoGoReport nogo_joint_kernel(double theta, std::span<const int> cutoffs, double kernel_tolerance) {
  if (cutoffs.empty()) {
    throw ParameterError("nogo_joint_kernel: cutoff list is empty");
  }
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (cutoffs[i] < 2) {
      throw ParameterError("nogo_joint_kernel: every cutoff must be >= 2");
    }
    if (i > 0 && cutoffs[i] <= cutoffs[i - 1]) {
      throw ParameterError("nogo_joint_kernel: cutoffs must be strictly increasing");
    }
  }
  if (!(kernel_tolerance > 0.0)) {
    throw ParameterError("nogo_joint_kernel: kernel tolerance must be positive");
  }

  NoGoReport report;
  report.theta = theta;
  report.kernel_tolerance = kernel_tolerance;
  report.cutoffs.assign(cutoffs.begin(), cutoffs.end());

  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    const Matrix stacked = stacked_nogo_operator(build_fock_rep(cutoffs[i]), theta);
    Eigen::BDCSVD<Matrix> svd(stacked);
    const RealVector& s = svd.singularValues();
    report.min_singular_values.push_back(s(s.size() - 1));
    if (i + 1 == cutoffs.size()) {
      report.kernel_dimension_estimate = int((s.array() < kernel_tolerance).count());
    }
  }
  return report;
}

}  // namespace pfl
