#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pfl/blocks.hpp"

namespace pfl {

using NamedMatrix = std::pair<std::string, Matrix>;

/// Closed-form matrices of the hand-picked M = 1 and M = 2 realizations,
/// evaluated at real gamma > 0. Names match the BlockSystem fields they
/// describe: a, b, N, e, S_h, S_e, and for M = 1 also sqrt_S_e, n, c.
std::vector<NamedMatrix> fixture_formulas(int level, double gamma);

/// Compares a BlockSystem built from paper_fixture(level, gamma) against
/// fixture_formulas, entrywise, with residual max|x - y| / max(1, max|y|).
std::vector<Check> fixture_checks(const BlockSystem& system, double gamma, double tol = 1e-12);

}  // namespace pfl
