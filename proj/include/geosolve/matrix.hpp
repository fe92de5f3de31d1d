#pragma once

#include <cassert>
#include <stdexcept>
#include <vector>

#include "geosolve/ring.hpp"
#include "geosolve/unipoly.hpp"

namespace geosolve {

// Square matrix over a commutative ring parameter (rationals, truncated
// series, nested matrices). Row-major.
template <class R>
struct Matrix {
  int n = 0;
  std::vector<R> a;

  Matrix() = default;
  Matrix(int dim, const R& fill) : n(dim), a((size_t)dim * dim, fill) {}

  static Matrix zeros(int dim, const R& like) { return Matrix(dim, zero_like(like)); }
  static Matrix identity(int dim, const R& like) {
    Matrix m = zeros(dim, like);
    for (int i = 0; i < dim; ++i) m.at(i, i) = one_like(like);
    return m;
  }
  static Matrix scalar(int dim, const R& v) {
    Matrix m = zeros(dim, v);
    for (int i = 0; i < dim; ++i) m.at(i, i) = v;
    return m;
  }

  R& at(int i, int j) { return a[(size_t)i * n + j]; }
  const R& at(int i, int j) const { return a[(size_t)i * n + j]; }

  const R& sample() const {
    assert(n > 0);
    return a[0];
  }

  bool operator==(const Matrix& o) const { return n == o.n && a == o.a; }

  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.a) x = -x;
    return r;
  }
  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    assert(x.n == y.n);
    Matrix r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] + y.a[i];
    return r;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) { return x + (-y); }
  friend Matrix operator*(const Matrix& x, const Matrix& y) { return mat_mul(x, y); }

  std::vector<R> apply(const std::vector<R>& v) const {
    assert((int)v.size() == n);
    std::vector<R> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
      R acc = zero_like(sample());
      for (int j = 0; j < n; ++j) acc = acc + at(i, j) * v[j];
      out.push_back(std::move(acc));
    }
    return out;
  }

  R trace() const {
    assert(n > 0);
    R acc = zero_like(sample());
    for (int i = 0; i < n; ++i) acc = acc + at(i, i);
    return acc;
  }

  Matrix transpose() const {
    Matrix r = *this;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) std::swap(r.at(i, j), r.at(j, i));
    return r;
  }
};

// Serial product, kept as the reference implementation for the parallel
// kernel below.
template <class R>
Matrix<R> mat_mul_serial(const Matrix<R>& x, const Matrix<R>& y) {
  assert(x.n == y.n);
  if (x.n == 0) return x;
  Matrix<R> r = Matrix<R>::zeros(x.n, x.sample());
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      if (is_zero(x.at(i, k))) continue;
      for (int j = 0; j < x.n; ++j) r.at(i, j) = r.at(i, j) + x.at(i, k) * y.at(k, j);
    }
  return r;
}

template <class R>
Matrix<R> mat_mul_parallel(const Matrix<R>& x, const Matrix<R>& y) {
  assert(x.n == y.n);
  if (x.n == 0) return x;
  const int n = x.n;
  Matrix<R> r = Matrix<R>::zeros(n, x.sample());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (is_zero(x.at(i, k))) continue;
      for (int j = 0; j < n; ++j) r.at(i, j) = r.at(i, j) + x.at(i, k) * y.at(k, j);
    }
  }
  return r;
}

template <class R>
Matrix<R> mat_mul(const Matrix<R>& x, const Matrix<R>& y) {
  if (x.n >= 8) return mat_mul_parallel(x, y);
  return mat_mul_serial(x, y);
}

template <class R>
Matrix<R> zero_like(const Matrix<R>& m) {
  return Matrix<R>::zeros(m.n, m.sample());
}
template <class R>
Matrix<R> one_like(const Matrix<R>& m) {
  return Matrix<R>::identity(m.n, m.sample());
}
template <class R>
bool is_zero(const Matrix<R>& m) {
  for (const auto& x : m.a)
    if (!is_zero(x)) return false;
  return true;
}
template <class R>
bool is_one(const Matrix<R>& m) {
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) {
      if (i == j ? !is_one(m.at(i, j)) : !is_zero(m.at(i, j))) return false;
    }
  return true;
}
template <class R>
Matrix<R> scalar_mul(const Matrix<R>& m, const BigRat& s) {
  Matrix<R> r = m;
  for (auto& x : r.a) x = scalar_mul(x, s);
  return r;
}

// det(T*Id - M) as a monic polynomial, division-free (Samuelson-Berkowitz).
// Works over any commutative ring; the only constants used are 0 and +-1.
template <class R>
UniPoly<R> berkowitz_charpoly(const Matrix<R>& m) {
  const int n = m.n;
  if (n == 0) throw std::domain_error("charpoly of empty matrix");
  const R& like = m.sample();
  // Coefficient vector of the charpoly of the leading k x k minor, highest
  // power first; starts with the 1 x 1 case.
  std::vector<R> c{one_like(like), -m.at(0, 0)};
  for (int k = 2; k <= n; ++k) {
    // moments: mom[0] = a_kk, mom[j] = Rv with v = A'^(j-1) S
    std::vector<R> mom;
    mom.reserve(k);
    mom.push_back(m.at(k - 1, k - 1));
    std::vector<R> v(k - 1, zero_like(like));
    for (int i = 0; i < k - 1; ++i) v[i] = m.at(i, k - 1);
    for (int j = 1; j <= k - 1; ++j) {
      R dot = zero_like(like);
      for (int i = 0; i < k - 1; ++i) dot = dot + m.at(k - 1, i) * v[i];
      mom.push_back(std::move(dot));
      if (j == k - 1) break;
      std::vector<R> w(k - 1, zero_like(like));
      for (int i = 0; i < k - 1; ++i) {
        for (int t = 0; t < k - 1; ++t) {
          if (is_zero(m.at(i, t))) continue;
          w[i] = w[i] + m.at(i, t) * v[t];
        }
      }
      v = std::move(w);
    }
    // c_new = T_k * c with the lower-triangular Toeplitz band
    // (1, -mom[0], -mom[1], ...).
    std::vector<R> out(k + 1, zero_like(like));
    for (int i = 0; i <= k; ++i) {
      R acc = zero_like(like);
      for (int j = 0; j <= std::min(i, k - 1); ++j) {
        int band = i - j;
        if (band == 0)
          acc = acc + c[j];
        else
          acc = acc - mom[band - 1] * c[j];
      }
      out[i] = std::move(acc);
    }
    c = std::move(out);
  }
  // stored highest power first; UniPoly wants low to high
  std::vector<R> low(c.rbegin(), c.rend());
  return UniPoly<R>(std::move(low));
}

// Adjugate and determinant via the characteristic polynomial:
// M * Adj = Adj * M = det * Id, division-free.
template <class R>
std::pair<Matrix<R>, R> adjoint_det(const Matrix<R>& m) {
  const int n = m.n;
  if (n == 0) throw std::domain_error("adjoint of empty matrix");
  UniPoly<R> chi = berkowitz_charpoly(m);
  const R& like = m.sample();
  R det = chi.coeff_or_zero(0, like);
  if (n % 2) det = -det;
  // Adj = (-1)^(n+1) (M^(n-1) + c_(n-1) M^(n-2) + ... + c_1 Id), Horner form.
  Matrix<R> acc = Matrix<R>::identity(n, like);
  for (int k = n - 2; k >= 0; --k) {
    acc = mat_mul(acc, m) + Matrix<R>::scalar(n, chi.coeff_or_zero(k + 1, like));
  }
  Matrix<R> adj = (n % 2) ? acc : -acc;
  return {std::move(adj), std::move(det)};
}

template <class R>
R mat_det(const Matrix<R>& m) {
  UniPoly<R> chi = berkowitz_charpoly(m);
  R det = chi.coeff_or_zero(0, m.sample());
  if (m.n % 2) det = -det;
  return det;
}

// Companion matrix of a monic polynomial; charpoly(companion(q)) == q.
template <class R>
Matrix<R> companion(const UniPoly<R>& q) {
  if (q.degree() < 1) throw std::domain_error("companion needs degree >= 1");
  if (!is_one(q.lc())) throw std::domain_error("companion needs a monic polynomial");
  int d = q.degree();
  const R& like = q.lc();
  Matrix<R> m = Matrix<R>::zeros(d, like);
  for (int i = 1; i < d; ++i) m.at(i, i - 1) = one_like(like);
  for (int i = 0; i < d; ++i) m.at(i, d - 1) = -q.coeffs()[i];
  return m;
}

// Evaluates a polynomial at a matrix argument (Horner); embed converts the
// polynomial's coefficients into the matrix entry ring.
template <class R, class S, class Embed>
Matrix<S> poly_at_matrix(const UniPoly<R>& p, const Matrix<S>& m, Embed embed) {
  Matrix<S> acc = Matrix<S>::zeros(m.n, m.sample());
  for (int i = p.degree(); i >= 0; --i) {
    acc = mat_mul(acc, m);
    acc = acc + Matrix<S>::scalar(m.n, embed(p.coeffs()[i]));
  }
  return acc;
}

// Writes w in the Krylov basis {e, Me, ..., M^(D-1)e}: returns c with
// sum c_i M^i e = w. Division-free except for the single division by the
// basis determinant (ring_div of the entry ring).
template <class R>
std::vector<R> cyclic_solve(const Matrix<R>& m, const std::vector<R>& e,
                            const std::vector<R>& w) {
  const int n = m.n;
  assert((int)e.size() == n && (int)w.size() == n);
  Matrix<R> K = Matrix<R>::zeros(n, m.sample());
  std::vector<R> col = e;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) K.at(i, j) = col[i];
    if (j + 1 < n) col = m.apply(col);
  }
  auto [adj, det] = adjoint_det(K);
  if (is_zero(det)) throw std::domain_error("element not primitive");
  std::vector<R> scaled = adj.apply(w);
  std::vector<R> out;
  out.reserve(n);
  for (auto& x : scaled) out.push_back(ring_div(x, det));
  return out;
}

template <class R>
Height height(const Matrix<R>& m) {
  Height h;
  for (const auto& x : m.a) h = h.max_with(height(x));
  return h;
}

}  // namespace geosolve
