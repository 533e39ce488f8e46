#pragma once

#include <vector>

namespace qbo {

// Eigenvalues of a dense symmetric matrix (row-major, dim x dim) by cyclic
// Jacobi rotations, ascending. Adequate for the truncated density matrices
// (dim of order 100).
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int dim);

}  // namespace qbo
