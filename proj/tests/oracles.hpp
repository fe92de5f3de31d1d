#pragma once

// Independent reference implementations used as test oracles. Everything here
// stays deliberately naive (expansion, permutations, textbook recursions) and
// separate from the library's computation paths.

#include <random>
#include <vector>

#include "geosolve/matrix.hpp"
#include "geosolve/multipoly.hpp"
#include "geosolve/slp.hpp"
#include "geosolve/unipoly.hpp"

namespace oracles {

using namespace geosolve;

// Dense expansion of every program output.
inline std::vector<MultiPoly> dense(const Slp& s) {
  std::vector<MultiPoly> pt;
  for (int i = 0; i < s.nvars; ++i) pt.push_back(MultiPoly::variable(s.nvars, i));
  return s.eval(pt);
}

// Determinant by expansion along the first row (Leibniz-equivalent).
template <class R>
R leibniz_det(const Matrix<R>& m) {
  if (m.n == 1) return m.at(0, 0);
  R acc = zero_like(m.sample());
  for (int j = 0; j < m.n; ++j) {
    if (is_zero(m.at(0, j))) continue;
    Matrix<R> minor = Matrix<R>::zeros(m.n - 1, m.sample());
    for (int r = 1; r < m.n; ++r) {
      int cc = 0;
      for (int c = 0; c < m.n; ++c) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = m.at(r, c);
      }
    }
    R term = m.at(0, j) * leibniz_det(minor);
    if (j % 2 == 0)
      acc = acc + term;
    else
      acc = acc - term;
  }
  return acc;
}

// charpoly det(T Id - M) via the expansion determinant over R[T].
template <class R>
UniPoly<R> leibniz_charpoly(const Matrix<R>& m) {
  using P = UniPoly<R>;
  Matrix<P> t = Matrix<P>::zeros(m.n, P::constant(one_like(m.sample())));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) {
      P e = P::constant(-m.at(i, j));
      if (i == j) e = e + P::variable(one_like(m.sample()));
      t.at(i, j) = e;
    }
  return leibniz_det(t);
}

// Cofactor adjugate.
template <class R>
Matrix<R> cofactor_adjugate(const Matrix<R>& m) {
  Matrix<R> adj = Matrix<R>::zeros(m.n, m.sample());
  if (m.n == 1) {
    adj.at(0, 0) = one_like(m.sample());
    return adj;
  }
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) {
      Matrix<R> minor = Matrix<R>::zeros(m.n - 1, m.sample());
      int rr = 0;
      for (int r = 0; r < m.n; ++r) {
        if (r == i) continue;
        int cc = 0;
        for (int c = 0; c < m.n; ++c) {
          if (c == j) continue;
          minor.at(rr, cc++) = m.at(r, c);
        }
        ++rr;
      }
      R cof = leibniz_det(minor);
      adj.at(j, i) = ((i + j) % 2 == 0) ? cof : -cof;
    }
  return adj;
}

// Classical Euclidean gcd over Q, made monic.
inline UniPoly<BigRat> euclid_gcd(UniPoly<BigRat> a, UniPoly<BigRat> b) {
  while (!b.zero_p()) {
    UniPoly<BigRat> r = divrem(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

// Solves M x = rhs over Q by Gaussian elimination; empty result if singular
// or inconsistent.
inline std::vector<BigRat> gauss_solve(std::vector<std::vector<BigRat>> M,
                                       std::vector<BigRat> rhs) {
  const int rows = (int)M.size();
  const int cols = rows ? (int)M[0].size() : 0;
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (M[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(M[p], M[r]);
    std::swap(rhs[p], rhs[r]);
    BigRat inv = 1 / M[r][c];
    for (int j = c; j < cols; ++j) M[r][j] *= inv;
    rhs[r] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || M[i][c] == 0) continue;
      BigRat f = M[i][c];
      for (int j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (rhs[i] != 0) return {};  // inconsistent
  std::vector<BigRat> x(cols, BigRat(0));
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
  return x;
}

// gcd through the linear system of the Bezout identity: the least degree d
// for which u a + v b is monic of degree d with deg u < deg b - d and
// deg v < deg a - d has the gcd as its unique monic value.
inline UniPoly<BigRat> bezout_gcd(const UniPoly<BigRat>& a, const UniPoly<BigRat>& b) {
  if (a.zero_p()) return make_monic(b);
  if (b.zero_p()) return make_monic(a);
  const int m = a.degree(), n = b.degree();
  for (int d = 0; d <= std::min(m, n); ++d) {
    const int nu = std::max(n - d, 1), nv = std::max(m - d, 1);
    // unknowns: u_0..u_{nu-1}, v_0..v_{nv-1}
    // equations: coeff_j(u a + v b) = [j == d] for j = d..max degree
    const int top = std::max(m + nu - 1, n + nv - 1);
    std::vector<std::vector<BigRat>> M;
    std::vector<BigRat> rhs;
    for (int j = d; j <= top; ++j) {
      std::vector<BigRat> row(nu + nv, BigRat(0));
      for (int i = 0; i < nu; ++i) {
        int k = j - i;
        if (k >= 0 && k <= m) row[i] = a.coeffs()[k];
      }
      for (int i = 0; i < nv; ++i) {
        int k = j - i;
        if (k >= 0 && k <= n) row[nu + i] = b.coeffs()[k];
      }
      M.push_back(std::move(row));
      rhs.emplace_back(j == d ? 1 : 0);
    }
    auto x = gauss_solve(std::move(M), std::move(rhs));
    if (x.empty()) continue;
    std::vector<BigRat> uc(x.begin(), x.begin() + nu);
    std::vector<BigRat> vc(x.begin() + nu, x.end());
    UniPoly<BigRat> g = UniPoly<BigRat>(std::move(uc)) * a + UniPoly<BigRat>(std::move(vc)) * b;
    if (g.degree() != d) continue;
    g = make_monic(g);
    if (divrem(a, g).second.zero_p() && divrem(b, g).second.zero_p()) return g;
  }
  return make_monic(a);  // unreachable for valid inputs
}

// Sylvester-matrix resultant via the expansion determinant.
template <class R>
R sylvester_resultant(const UniPoly<R>& a, const UniPoly<R>& b) {
  int m = a.degree(), n = b.degree();
  const R like = a.zero_p() ? b.lc() : a.lc();
  if (m < 0 || n < 0) return zero_like(like);
  if (m == 0) {
    R r = one_like(like);
    for (int i = 0; i < n; ++i) r = r * a.coeffs()[0];
    return r;
  }
  if (n == 0) {
    R r = one_like(like);
    for (int i = 0; i < m; ++i) r = r * b.coeffs()[0];
    return r;
  }
  Matrix<R> s = Matrix<R>::zeros(m + n, like);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s.at(i, i + (m - k)) = a.coeffs()[k];
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) s.at(n + i, i + (n - k)) = b.coeffs()[k];
  return leibniz_det(s);
}

// Uniform helpers with explicit engines so every test is reproducible.
inline long rand_int(std::mt19937_64& rng, long lo, long hi) {
  return lo + (long)(rng() % (unsigned long)(hi - lo + 1));
}

inline UniPoly<BigRat> random_rat_poly(std::mt19937_64& rng, int maxdeg, long coeff_bound) {
  int d = (int)rand_int(rng, 0, maxdeg);
  std::vector<BigRat> c;
  for (int i = 0; i <= d; ++i) c.emplace_back(rand_int(rng, -coeff_bound, coeff_bound));
  return UniPoly<BigRat>(std::move(c));
}

inline UniPoly<BigInt> random_int_poly(std::mt19937_64& rng, int maxdeg, long coeff_bound) {
  int d = (int)rand_int(rng, 0, maxdeg);
  std::vector<BigInt> c;
  for (int i = 0; i <= d; ++i) c.emplace_back(rand_int(rng, -coeff_bound, coeff_bound));
  return UniPoly<BigInt>(std::move(c));
}

// Random canonical program with bounded size, depth and scalar height; the
// single output is the last gate (matching the plain gate-output model).
inline Slp random_slp(std::mt19937_64& rng, int nvars, int max_muls, int max_depth,
                      long scalar_bound) {
  SlpBuilder b(nvars);
  struct Node {
    LinComb lc;
    int depth;
  };
  std::vector<Node> pool;
  for (int i = 0; i < nvars; ++i) pool.push_back({b.input(i), 0});
  pool.push_back({b.one(), 0});
  const int muls = (int)rand_int(rng, 1, max_muls);
  Node last = pool[0];
  for (int g = 0; g < muls; ++g) {
    auto side = [&](int depth_budget, int& depth_out) {
      LinComb acc;
      depth_out = 0;
      int terms = (int)rand_int(rng, 1, 3);
      for (int t = 0; t < terms; ++t) {
        const Node& pick = pool[(size_t)rand_int(rng, 0, (long)pool.size() - 1)];
        if (pick.depth > depth_budget) continue;
        long s = rand_int(rng, -scalar_bound, scalar_bound);
        if (s == 0) s = 1;
        acc = lc_add(acc, lc_scale(pick.lc, BigRat(s)));
        depth_out = std::max(depth_out, pick.depth);
      }
      if (acc.empty()) {
        acc = lc_scale(b.one(), BigRat(rand_int(rng, 1, scalar_bound)));
        depth_out = 0;
      }
      return acc;
    };
    int dl = 0, dr = 0;
    LinComb lhs = side(max_depth - 1, dl);
    LinComb rhs = side(max_depth - 1, dr);
    LinComb prod = b.mul(lhs, rhs);
    int pd = std::max(dl, dr) + 1;
    // constant folding inside mul may have skipped the gate
    if (prod.size() == 1 && prod[0].coeff == 1 &&
        prod[0].gate == b.program().gates.size() - 1 &&
        b.program().gates.back().kind == Gate::Kind::Mul) {
      last = {prod, pd};
    } else {
      last = {prod, std::max(dl, dr)};
    }
    pool.push_back(last);
  }
  return b.take({last.lc});
}

// System builders shared by tests and the acceptance suite.
inline Slp chain_system(int n) {
  std::vector<std::string> vars, eqs;
  for (int i = 1; i <= n; ++i) vars.push_back("X" + std::to_string(i));
  eqs.push_back("X1^2+X1+1");
  for (int i = 2; i <= n; ++i)
    eqs.push_back("X" + std::to_string(i) + "-X" + std::to_string(i - 1) + "^2");
  return parse_system(eqs, vars);
}

inline Slp boolean_system(int n) {
  std::vector<std::string> vars, eqs;
  for (int i = 1; i <= n; ++i) vars.push_back("X" + std::to_string(i));
  for (int i = 1; i <= n; ++i) {
    std::string x = "X" + std::to_string(i);
    eqs.push_back(x + "^2-" + x);
  }
  return parse_system(eqs, vars);
}

// Boolean cube plus the binary-encoding equation k - sum 2^(i-1) X_i.
inline Slp problem2_system(int n, const BigInt& k) {
  std::vector<std::string> vars, eqs;
  for (int i = 1; i <= n; ++i) vars.push_back("X" + std::to_string(i));
  for (int i = 1; i <= n; ++i) {
    std::string x = "X" + std::to_string(i);
    eqs.push_back(x + "^2-" + x);
  }
  std::string last = "(" + k.get_str() + ")";
  BigInt w(1);
  for (int i = 1; i <= n; ++i) {
    last += "-(" + w.get_str() + ")*X" + std::to_string(i);
    w *= 2;
  }
  eqs.push_back(last);
  return parse_system(eqs, vars);
}

}  // namespace oracles
