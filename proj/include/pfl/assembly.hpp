#pragma once

#include <vector>

#include "pfl/blocks.hpp"
#include "pfl/overlaps.hpp"

namespace pfl {

enum class Realization { cholesky, paper_fixture };

/// Block-diagonal operators on H_0 + ... + H_{max_level}. Block M occupies
/// rows/columns offsets[M] .. offsets[M] + M.
struct GlobalOperators {
  int max_level = 0;
  Eigen::Index total_dim = 0;
  Complex gamma;
  Realization realization = Realization::cholesky;
  std::vector<Eigen::Index> offsets;
  std::vector<BlockSystem> blocks;
  Matrix A;
  Matrix B;
  Matrix N;        // B A
  Matrix N_sharp;  // A^dagger B^dagger
  Matrix S_h;
  Matrix S_e;
  std::vector<Matrix> projections;

  /// h_k^(M) / e_k^(M) embedded in the assembled space.
  Vector h_vector(int level, int k) const;
  Vector e_vector(int level, int k) const;
};

/// Builds every level, embeds it, and forms N and N_sharp. Paper-fixture
/// realization needs real gamma > 0 and max_level <= 2 (level 0 is the
/// normalized vacuum).
GlobalOperators assemble(Complex gamma, int max_level, Realization realization = Realization::cholesky);
GlobalOperators assemble(const NCBosonParams& params, int max_level,
                         Realization realization = Realization::cholesky);

/// Residuals of the ladder action table on every h_k^(M) and e_k^(M), of the
/// eigen-relations N h = k h and N_sharp e = k e, and of the projection
/// algebra.
std::vector<Check> action_checks(const GlobalOperators& ops, double tol = kCheckTolerance);

struct ResolutionReport {
  double resolution_residual = 0.0;   // max |sum_M sum_l |e_l><h_l| - 1|
  double intertwining_defect = 0.0;   // max over h_k^(M) of |(S_e N - N^dagger S_e) h_k|
  std::vector<double> s_h_norms;      // spectral norm per level
  std::vector<double> s_e_norms;
  std::vector<double> s_h_conditions;
  std::vector<double> s_e_conditions;
};

ResolutionReport global_resolution_check(const GlobalOperators& ops);

}  // namespace pfl
