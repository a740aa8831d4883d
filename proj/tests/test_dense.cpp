#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "doctest.h"
#include "wpfp/dense.hpp"
#include "wpfp/errors.hpp"

using namespace wpfp;

namespace {

DenseMatrix random_matrix(int n, unsigned seed, double scale = 1.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DenseMatrix a(n);
  for (auto& v : a.entries) v = scale * dist(rng);
  return a;
}

double rel_frobenius(const DenseMatrix& a, const DenseMatrix& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    num += (a.entries[i] - b.entries[i]) * (a.entries[i] - b.entries[i]);
    den += b.entries[i] * b.entries[i];
  }
  return std::sqrt(num / den);
}

// independent route for symmetric input
DenseMatrix exp_by_eigen(const DenseMatrix& a) {
  Eigen::MatrixXd m(a.n, a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) m(i, j) = a(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  Eigen::MatrixXd r =
      es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() *
      es.eigenvectors().transpose();
  DenseMatrix out(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) out(i, j) = r(i, j);
  return out;
}

} // namespace

TEST_SUITE_BEGIN("dense");

TEST_CASE("exp(0) is the identity exactly") {
  const DenseMatrix e = matrix_exp(DenseMatrix(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(e(i, j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("nilpotent series terminates") {
  DenseMatrix a(2);
  a(0, 1) = 1.0;
  const DenseMatrix e = matrix_exp(a);
  CHECK(e(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(e(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(e(1, 0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(e(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("diagonal exponential") {
  DenseMatrix a(2);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  const DenseMatrix e = matrix_exp(a);
  CHECK(e(0, 0) == doctest::Approx(2.718281828459045).epsilon(1e-14));
  CHECK(e(1, 1) == doctest::Approx(7.38905609893065).epsilon(1e-14));
  CHECK(std::fabs(e(0, 1)) < 1e-15);
}

TEST_CASE("random symmetric 8x8 matches the eigendecomposition oracle") {
  for (unsigned seed : {11u, 12u, 13u}) {
    DenseMatrix a = random_matrix(8, seed, 2.0);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < i; ++j) a(j, i) = a(i, j);
    CHECK(rel_frobenius(matrix_exp(a), exp_by_eigen(a)) < 1e-12);
  }
}

TEST_CASE("exp(A) exp(-A) = I for ||A|| up to 10") {
  for (unsigned seed : {21u, 22u}) {
    DenseMatrix a = random_matrix(6, seed, 10.0 / 6.0);
    DenseMatrix neg = a;
    for (auto& v : neg.entries) v = -v;
    const DenseMatrix prod = matmul(matrix_exp(a), matrix_exp(neg));
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        CHECK(prod(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).scale(1.0).epsilon(1e-10));
  }
}

TEST_CASE("exp(A^T) = exp(A)^T") {
  const DenseMatrix a = random_matrix(5, 31, 1.5);
  DenseMatrix at(5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) at(i, j) = a(j, i);
  const DenseMatrix e = matrix_exp(a), et = matrix_exp(at);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(et(i, j) == doctest::Approx(e(j, i)).epsilon(1e-12));
}

TEST_CASE("similarity transform commutes with the exponential") {
  const int n = 4;
  const DenseMatrix a = random_matrix(n, 41, 1.0);
  DenseMatrix s = DenseMatrix::identity(n);
  const DenseMatrix pert = random_matrix(n, 42, 0.2);
  for (std::size_t i = 0; i < s.entries.size(); ++i) s.entries[i] += pert.entries[i];

  DenseMatrix s_inv = DenseMatrix::identity(n);
  lu_solve_inplace(s, s_inv);

  const DenseMatrix conj = matmul(matmul(s, a), s_inv);
  const DenseMatrix left = matrix_exp(conj);
  const DenseMatrix right = matmul(matmul(s, matrix_exp(a)), s_inv);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      CHECK(left(i, j) == doctest::Approx(right(i, j)).scale(1.0).epsilon(1e-10));
}

TEST_CASE("non-finite input is rejected") {
  DenseMatrix a(2);
  a(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(matrix_exp(a), numeric_error);
  a(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(matrix_exp(a), numeric_error);
}

TEST_CASE("complex exponential of a diagonal phase") {
  DenseMatrixZ a(2);
  a(0, 0) = std::complex<double>(0.0, std::numbers::pi / 2);
  a(1, 1) = std::complex<double>(-0.5, 1.0);
  const DenseMatrixZ e = matrix_exp(a);
  CHECK(std::abs(e(0, 0) - std::complex<double>(0.0, 1.0)) < 1e-14);
  CHECK(std::abs(e(1, 1) - std::exp(std::complex<double>(-0.5, 1.0))) < 1e-14);
  CHECK(std::abs(e(0, 1)) < 1e-15);
}

TEST_SUITE_END();
