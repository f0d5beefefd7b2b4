#pragma once

#include <optional>
#include <vector>

#include "ems/error.hpp"
#include "ems/rational.hpp"

namespace ems {

using Matrix = std::vector<Vec>;  // row major

Rat determinant(Matrix m);

// Solves A x = b for square A. Empty optional when A is singular.
std::optional<Vec> solve_linear(Matrix a, Vec b);

int rank(Matrix m);

// Solves the (possibly overdetermined, consistent) system A x = b where A is
// rows x cols with full column rank. Throws on inconsistency or rank loss.
Vec solve_full_column_rank(Matrix a, Vec b);

// Unnormalized Gram-Schmidt over the rationals: returns pairwise-orthogonal
// vectors spanning the same space. Throws "degenerate-flat" on dependence.
std::vector<Vec> gram_schmidt(const std::vector<Vec>& vs);

// Pairwise-orthogonal rational basis of the orthogonal complement of
// span(vs) in R^dim. Completes with unit vectors, pivoting on the first
// nonzero coordinate.
std::vector<Vec> orthogonal_complement(const std::vector<Vec>& vs, int dim);

}  // namespace ems
