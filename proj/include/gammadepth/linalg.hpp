#pragma once

#include <vector>

#include "gammadepth/field.hpp"

namespace gd {

using DenseMatrix = std::vector<std::vector<Coeff>>;

/// Reduced row echelon form in place over GF(p), considering the first ncols
/// columns for pivots (remaining columns are carried along). Returns the
/// pivot columns; rows past the rank are zero on those columns.
std::vector<int> row_reduce(const PrimeField& field, DenseMatrix& rows, int ncols);

/// Rank of a dense matrix over GF(p).
int rank(const PrimeField& field, DenseMatrix rows);

}  // namespace gd
