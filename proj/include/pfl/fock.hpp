#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pfl/linalg.hpp"

namespace pfl {

/// Truncated two-mode boson representation. Each mode keeps occupations
/// 0..cutoff; product states are ordered mode-x major, i.e. |nx, ny> sits at
/// index nx * (cutoff + 1) + ny.
struct FockRep {
  int cutoff = 0;
  Matrix a_x;
  Matrix a_y;

  int mode_dim() const { return cutoff + 1; }
  Eigen::Index dim() const { return a_x.rows(); }
  Eigen::Index index(int nx, int ny) const { return Eigen::Index(nx) * mode_dim() + ny; }

  /// x = (a_x + a_x^dagger) / sqrt(2), and likewise for y, p_x, p_y.
  Matrix x() const;
  Matrix y() const;
  Matrix p_x() const;
  Matrix p_y() const;
  /// Derivative operators d/dx = (a_x - a_x^dagger) / sqrt(2).
  Matrix d_x() const;
  Matrix d_y() const;
};

/// Single-mode truncated lowering matrix: sqrt(1..cutoff) on the superdiagonal.
Matrix truncated_lowering(int cutoff);

FockRep build_fock_rep(int cutoff);

/// The two annihilation conditions of the theta-deformed pair,
///   L1 = x + d_x + i (theta/2) d_y,   L2 = y + d_y - i (theta/2) d_x,
/// written through x + d_x = sqrt(2) a_x.
std::pair<Matrix, Matrix> nogo_operators(const FockRep& rep, double theta);

/// [L1; L2] stacked vertically.
Matrix stacked_nogo_operator(const FockRep& rep, double theta);

inline constexpr double kDefaultKernelTolerance = 1e-8;

struct NoGoReport {
  double theta = 0.0;
  double kernel_tolerance = kDefaultKernelTolerance;
  std::vector<int> cutoffs;
  std::vector<double> min_singular_values;
  /// Singular values below kernel_tolerance at the largest cutoff.
  int kernel_dimension_estimate = 0;

  /// True when the minimum singular value never drops from one cutoff to the
  /// next by more than `relative_slack` of its previous value.
  bool floor_non_decreasing(double relative_slack) const;
};

/// Sweeps the stacked operator over increasing cutoffs and records its
/// smallest singular value. Truncation evidence only: a non-decaying floor
/// supports, but does not prove, a trivial joint kernel.
NoGoReport nogo_joint_kernel(double theta, std::span<const int> cutoffs,
                             double kernel_tolerance = kDefaultKernelTolerance);

}  // namespace pfl
