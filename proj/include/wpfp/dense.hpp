#pragma once

#include <complex>
#include <vector>

namespace wpfp {

template <class T>
struct Dense {
  int n = 0;
  std::vector<T> entries;  // row-major n*n

  Dense() = default;
  explicit Dense(int dim) : n(dim), entries(static_cast<std::size_t>(dim) * dim, T{}) {}

  T& operator()(int i, int j) { return entries[static_cast<std::size_t>(i) * n + j]; }
  T operator()(int i, int j) const { return entries[static_cast<std::size_t>(i) * n + j]; }

  static Dense identity(int dim) {
    Dense m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = T{1};
    return m;
  }
};

using DenseMatrix = Dense<double>;
using DenseMatrixZ = Dense<std::complex<double>>;

// exp(A) by scaling-and-squaring with Pade approximants of degree
// 3/5/7/9/13 selected by 1-norm thresholds; the Pade solves use
// partial-pivoted LU. Throws numeric_error on non-finite input or
// overflow while squaring.
DenseMatrix matrix_exp(const DenseMatrix& a);
DenseMatrixZ matrix_exp(const DenseMatrixZ& a);

// Solves A X = B in place of B (X and B n x n). Partial pivoting.
void lu_solve_inplace(DenseMatrix a, DenseMatrix& b);
void lu_solve_inplace(DenseMatrixZ a, DenseMatrixZ& b);

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrixZ matmul(const DenseMatrixZ& a, const DenseMatrixZ& b);

} // namespace wpfp
