#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pfl/linalg.hpp"
#include "pfl/overlaps.hpp"

namespace pfl {

enum class BasisSource { cholesky, paper_fixture_m1, paper_fixture_m2, user_supplied };

std::string_view to_string(BasisSource source);

/// Biorthonormal pair on one level space H_M. Column k of `h` is h_k, column
/// k of `e` is e_k, and e^dagger h = identity.
struct BlockBasis {
  int level = 0;
  Matrix h;
  Matrix e;
  BasisSource source = BasisSource::user_supplied;

  Eigen::Index dim() const { return h.cols(); }
};

inline constexpr double kPositivityFloor = 1e-12;
inline constexpr double kCheckTolerance = 1e-10;

/// Upper-triangular h with positive diagonal and h^dagger h = gram, and
/// e = (h^dagger)^{-1}. Throws PositivityError if the Gram matrix is not
/// safely positive definite.
BlockBasis realize_basis_cholesky(const GramBlock& gram, double positivity_floor = kPositivityFloor);

/// The hand-picked realizations for M = 1 and M = 2 at real gamma > 0. They
/// reproduce the off-diagonal overlaps only; their norms are not the
/// algebraic ones.
BlockBasis paper_fixture(int level, double gamma);

/// Any invertible square `h`; e is its inverse adjoint.
BlockBasis user_basis(const Matrix& h);

struct Ladders {
  Matrix a;  // a h_k = sqrt(k) h_{k-1}
  Matrix b;  // b h_k = sqrt(k+1) h_{k+1}
};

/// Ladder operators defined by their action on the columns of `h`.
Ladders synthesize_ladders(const Matrix& h);

/// Dual basis built from the ladders alone: e_0 spans ker(b^dagger) with
/// <e_0, h_0> = 1, then e_{k+1} = a^dagger e_k / sqrt(k+1). Throws
/// NumericalError if ker(b^dagger) is not one-dimensional at `kernel_tol`
/// (relative to the largest singular value).
Matrix dual_basis_by_kernel(const Matrix& h, const Ladders& ladders, double kernel_tol = 1e-10);

struct BlockSystem {
  BlockBasis basis;
  Matrix a;
  Matrix b;
  Matrix number;             // N = b a
  Matrix s_h;                // sum_k |h_k><h_k|
  Matrix s_e;                // sum_k |e_k><e_k|
  Matrix sqrt_s_e;           // positive root of s_e
  Matrix inv_sqrt_s_e;
  Matrix n_selfadjoint;      // sqrt_s_e N sqrt_s_e^{-1}
  Matrix c;                  // columns c_k = sqrt_s_e h_k
  Matrix kernel_dual;        // e computed by dual_basis_by_kernel
  RealVector anticommutator_diagonal;
  double anticommutator_offdiagonal = 0.0;  // max |off-diagonal of e^dagger {a,b} h|

  int level() const { return basis.level; }
};

/// Builds every derived operator of one level. Throws PositivityError when
/// s_e is not positive and NumericalError when e^dagger {a,b} h is not
/// diagonal within `tol`. Agreement of the kernel-built dual basis with
/// basis.e is left to block_checks.
BlockSystem build_block_system(const BlockBasis& basis, double tol = kCheckTolerance);

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

Check make_check(std::string name, double residual, double tolerance);

/// Full per-level invariant suite: nilpotency, biorthonormality, spectra of N
/// and N^dagger, S_h S_e = 1, intertwining, the S maps, resolution of the
/// identity, n Hermitian with spectrum {0..M}, c orthonormal, and agreement
/// of the two dual-basis routes.
std::vector<Check> block_checks(const BlockSystem& system, double tol = kCheckTolerance);

/// M1, M2 and H = M1 + M2 represented on a truncated two-mode Fock space of
/// per-mode cutoff level + 1, and their action on the Phi_{level-j, j}.
struct DeformedNumberOperators {
  int level = 0;
  int cutoff = 0;
  Complex gamma;
  Matrix m1;
  Matrix m2;
  Matrix hamiltonian;
  /// Column j is Phi_{level-j, j} over the product basis (Fock oracle).
  Matrix phi;
  /// Coordinates of M1, M2, H on span(phi): op * phi = phi * restricted.
  Matrix m1_restricted;
  Matrix m2_restricted;
  Matrix h_restricted;

  /// max |M1 Phi - n1 Phi|, |M2 Phi - n2 Phi|, |H Phi - (n1+n2) Phi| over the level.
  double m1_action_residual() const;
  double m2_action_residual() const;
  double h_action_residual() const;
  /// max |[M1, M2] Phi| over the level.
  double commutator_residual() const;
};

/// Requires |gamma| != 1 and 0 <= level < kMaxLevel.
DeformedNumberOperators deformed_number_operators(const NCBosonParams& params, int level);

}  // namespace pfl
