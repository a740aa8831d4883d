#include "wpfp/dense.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wpfp/errors.hpp"
#include "wpfp/parallel.hpp"

namespace wpfp {

namespace {

template <class T>
double abs_of(const T& v) {
  return std::abs(v);
}

template <class T>
bool all_finite(const Dense<T>& a) {
  for (const T& v : a.entries)
    if (!std::isfinite(abs_of(v))) return false;
  return true;
}

template <class T>
double norm1(const Dense<T>& a) {
  double best = 0.0;
  for (int j = 0; j < a.n; ++j) {
    double col = 0.0;
    for (int i = 0; i < a.n; ++i) col += abs_of(a(i, j));
    best = std::max(best, col);
  }
  return best;
}

template <class T>
Dense<T> mul(const Dense<T>& a, const Dense<T>& b) {
  const int n = a.n;
  Dense<T> c(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const T* arow = &a.entries[i * n];
      T* crow = &c.entries[i * n];
      for (int k = 0; k < n; ++k) {
        const T aik = arow[k];
        const T* brow = &b.entries[static_cast<std::size_t>(k) * n];
        for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
      }
    }
  });
  return c;
}

// Gaussian elimination with partial pivoting; B is overwritten by A^-1 B.
template <class T>
void solve_inplace(Dense<T> a, Dense<T>& b) {
  const int n = a.n;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = abs_of(a(col, col));
    for (int i = col + 1; i < n; ++i) {
      const double v = abs_of(a(i, col));
      if (v > best) { best = v; piv = i; }
    }
    if (best == 0.0) throw numeric_error("lu_solve: singular matrix");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
      for (int j = 0; j < n; ++j) std::swap(b(col, j), b(piv, j));
    }
    const T inv_p = T{1} / a(col, col);
    for (int i = col + 1; i < n; ++i) {
      const T f = a(i, col) * inv_p;
      if (f == T{}) continue;
      for (int j = col + 1; j < n; ++j) a(i, j) -= f * a(col, j);
      for (int j = 0; j < n; ++j) b(i, j) -= f * b(col, j);
    }
  }
  for (int col = n - 1; col >= 0; --col) {
    const T inv_p = T{1} / a(col, col);
    for (int j = 0; j < n; ++j) b(col, j) *= inv_p;
    for (int i = 0; i < col; ++i) {
      const T f = a(i, col);
      if (f == T{}) continue;
      for (int j = 0; j < n; ++j) b(i, j) -= f * b(col, j);
    }
  }
}

template <class T>
void axpy(Dense<T>& y, double alpha, const Dense<T>& x) {
  for (std::size_t i = 0; i < y.entries.size(); ++i) y.entries[i] += alpha * x.entries[i];
}

// Pade numerator coefficients b_0..b_m for degrees 3..13.
const double kPade3[] = {120, 60, 12, 1};
const double kPade5[] = {30240, 15120, 3360, 420, 30, 1};
const double kPade7[] = {17297280, 8648640, 1995840, 277200, 25200, 1512, 56, 1};
const double kPade9[] = {17643225600, 8821612800, 2075673600, 302702400, 30270240,
                         2162160, 110880, 3960, 90, 1};
const double kPade13[] = {64764752532480000, 32382376266240000, 7771770303897600,
                          1187353796428800, 129060195264000, 10559470521600,
                          670442572800, 33522128640, 1323241920, 40840800,
                          960960, 16380, 182, 1};

// theta_m bounds from Higham's backward-error analysis.
const double kTheta3 = 1.495585217958292e-2;
const double kTheta5 = 2.539398330063230e-1;
const double kTheta7 = 9.504178996162932e-1;
const double kTheta9 = 2.097847961257068e0;
const double kTheta13 = 5.371920351148152e0;

// r_m(A) = q(A)^-1 p(A) with p/q split into even part V and odd part A*U.
template <class T>
Dense<T> pade(const Dense<T>& a, const double* b, int m) {
  const int n = a.n;
  const Dense<T> a2 = mul(a, a);
  Dense<T> u_inner = Dense<T>::identity(n);  // odd coefficients over A
  Dense<T> v = Dense<T>::identity(n);
  for (auto& e : u_inner.entries) e *= b[1];
  for (auto& e : v.entries) e *= b[0];

  if (m <= 9) {
    Dense<T> pow = a2;  // A^2, A^4, ...
    for (int k = 2; k <= m; k += 2) {
      axpy(v, b[k], pow);
      if (k + 1 <= m) axpy(u_inner, b[k + 1], pow);
      if (k + 2 <= m) pow = mul(pow, a2);
    }
  } else {
    // degree 13: split around A^6 to keep it at 6 multiplications total
    const Dense<T> a4 = mul(a2, a2);
    const Dense<T> a6 = mul(a4, a2);
    Dense<T> w(n);
    axpy(w, b[13], a6); axpy(w, b[11], a4); axpy(w, b[9], a2);
    w = mul(a6, w);
    axpy(w, b[7], a6); axpy(w, b[5], a4); axpy(w, b[3], a2);
    axpy(w, b[1], Dense<T>::identity(n));
    u_inner = w;
    Dense<T> z(n);
    axpy(z, b[12], a6); axpy(z, b[10], a4); axpy(z, b[8], a2);
    z = mul(a6, z);
    axpy(z, b[6], a6); axpy(z, b[4], a4); axpy(z, b[2], a2);
    axpy(z, b[0], Dense<T>::identity(n));
    v = z;
  }

  const Dense<T> u = mul(a, u_inner);
  // (V - U) X = (V + U)
  Dense<T> num = v, den = v;
  for (std::size_t i = 0; i < num.entries.size(); ++i) {
    num.entries[i] += u.entries[i];
    den.entries[i] -= u.entries[i];
  }
  solve_inplace(std::move(den), num);
  return num;
}

template <class T>
Dense<T> exp_impl(const Dense<T>& a) {
  if (a.n <= 0) throw config_error("matrix_exp: empty matrix");
  if (!all_finite(a)) throw numeric_error("matrix_exp: non-finite entries in input");

  const double nrm = norm1(a);
  if (nrm <= kTheta3) return pade(a, kPade3, 3);
  if (nrm <= kTheta5) return pade(a, kPade5, 5);
  if (nrm <= kTheta7) return pade(a, kPade7, 7);
  if (nrm <= kTheta9) return pade(a, kPade9, 9);

  int s = 0;
  if (nrm > kTheta13) s = static_cast<int>(std::ceil(std::log2(nrm / kTheta13)));
  Dense<T> scaled = a;
  const double f = std::ldexp(1.0, -s);
  for (auto& e : scaled.entries) e *= f;
  Dense<T> r = pade(scaled, kPade13, 13);
  for (int i = 0; i < s; ++i) {
    r = mul(r, r);
    if (!all_finite(r))
      throw numeric_error("matrix_exp: overflow while squaring (s=" + std::to_string(s) +
                          ", ||A||_1=" + std::to_string(nrm) + ")");
  }
  return r;
}

} // namespace

DenseMatrix matrix_exp(const DenseMatrix& a) { return exp_impl(a); }
DenseMatrixZ matrix_exp(const DenseMatrixZ& a) { return exp_impl(a); }

void lu_solve_inplace(DenseMatrix a, DenseMatrix& b) { solve_inplace(std::move(a), b); }
void lu_solve_inplace(DenseMatrixZ a, DenseMatrixZ& b) { solve_inplace(std::move(a), b); }

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) { return mul(a, b); }
DenseMatrixZ matmul(const DenseMatrixZ& a, const DenseMatrixZ& b) { return mul(a, b); }

} // namespace wpfp
