#pragma once

#include <cassert>
#include <map>
#include <string>
#include <vector>

#include "geosolve/ring.hpp"
#include "geosolve/unipoly.hpp"

namespace geosolve {

// Sparse multivariate polynomial over Q. Used for dense expansion oracles and
// for the small dense outputs of the duality pipeline.
class MultiPoly {
 public:
  using Exp = std::vector<uint32_t>;

  MultiPoly() = default;
  explicit MultiPoly(int nvars) : nvars_(nvars) {}

  static MultiPoly constant(int nvars, BigRat v) {
    MultiPoly p(nvars);
    p.set(Exp(nvars, 0), std::move(v));
    return p;
  }
  static MultiPoly variable(int nvars, int i) {
    MultiPoly p(nvars);
    Exp e(nvars, 0);
    e[i] = 1;
    p.set(e, BigRat(1));
    return p;
  }

  int nvars() const { return nvars_; }
  const std::map<Exp, BigRat>& terms() const { return c_; }
  bool zero_p() const { return c_.empty(); }

  BigRat coeff(const Exp& e) const {
    auto it = c_.find(e);
    return it == c_.end() ? BigRat(0) : it->second;
  }

  void set(const Exp& e, BigRat v) {
    assert((int)e.size() == nvars_);
    if (v == 0)
      c_.erase(e);
    else
      c_[e] = std::move(v);
  }

  int total_degree() const {  // -1 for the zero polynomial
    int d = -1;
    for (const auto& [e, v] : c_) {
      int s = 0;
      for (auto x : e) s += (int)x;
      d = std::max(d, s);
    }
    return d;
  }

  int degree_in(int var) const {
    int d = 0;
    for (const auto& [e, v] : c_) d = std::max(d, (int)e[var]);
    return d;
  }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& [e, v] : r.c_) v = -v;
    return r;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    assert(a.nvars_ == b.nvars_);
    MultiPoly r = a;
    for (const auto& [e, v] : b.c_) {
      auto it = r.c_.find(e);
      if (it == r.c_.end())
        r.c_[e] = v;
      else {
        it->second += v;
        if (it->second == 0) r.c_.erase(it);
      }
    }
    return r;
  }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    assert(a.nvars_ == b.nvars_);
    MultiPoly r(a.nvars_);
    for (const auto& [ea, va] : a.c_)
      for (const auto& [eb, vb] : b.c_) {
        Exp e(ea.size());
        for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        auto it = r.c_.find(e);
        if (it == r.c_.end()) {
          BigRat p = va * vb;
          if (p != 0) r.c_[std::move(e)] = std::move(p);
        } else {
          it->second += va * vb;
          if (it->second == 0) r.c_.erase(it);
        }
      }
    return r;
  }

  bool operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && c_ == o.c_; }

  template <class R>
  R eval(const std::vector<R>& point) const {
    assert((int)point.size() == nvars_ && nvars_ >= 1);
    R acc = zero_like(point[0]);
    for (const auto& [e, v] : c_) {
      R term = one_like(point[0]);
      for (int i = 0; i < nvars_; ++i)
        for (uint32_t k = 0; k < e[i]; ++k) term = term * point[i];
      acc = acc + scalar_mul(term, v);
    }
    return acc;
  }

  MultiPoly derivative(int var) const {
    MultiPoly r(nvars_);
    for (const auto& [e, v] : c_) {
      if (e[var] == 0) continue;
      Exp d = e;
      d[var] -= 1;
      r.set(d, v * BigRat((long)e[var]));
    }
    return r;
  }

  // Collects the coefficients of powers of one variable as multivariate
  // polynomials in the remaining ones (same variable numbering kept).
  std::vector<MultiPoly> coeffs_in(int var) const {
    std::vector<MultiPoly> out(degree_in(var) + 1, MultiPoly(nvars_));
    for (const auto& [e, v] : c_) {
      Exp d = e;
      uint32_t k = d[var];
      d[var] = 0;
      out[k].set(d, v);
    }
    return out;
  }

 private:
  int nvars_ = 0;
  std::map<Exp, BigRat> c_;
};

inline MultiPoly zero_like(const MultiPoly& p) { return MultiPoly(p.nvars()); }
inline MultiPoly one_like(const MultiPoly& p) { return MultiPoly::constant(p.nvars(), BigRat(1)); }
inline bool is_zero(const MultiPoly& p) { return p.zero_p(); }
inline bool is_one(const MultiPoly& p) {
  return p.terms().size() == 1 && p.coeff(MultiPoly::Exp(p.nvars(), 0)) == 1;
}
inline MultiPoly scalar_mul(const MultiPoly& p, const BigRat& s) {
  MultiPoly r(p.nvars());
  if (s == 0) return r;
  for (const auto& [e, v] : p.terms()) r.set(e, v * s);
  return r;
}

inline Height height(const MultiPoly& p) {
  Height h;
  for (const auto& [e, v] : p.terms()) h = h.max_with(height(v));
  return h;
}

// Univariate view of a 1-variable MultiPoly.
inline UniPoly<BigRat> to_unipoly(const MultiPoly& p) {
  assert(p.nvars() == 1);
  std::vector<BigRat> c(p.degree_in(0) + 1, BigRat(0));
  for (const auto& [e, v] : p.terms()) c[e[0]] = v;
  return UniPoly<BigRat>(std::move(c));
}

inline MultiPoly from_unipoly(const UniPoly<BigRat>& p, int nvars, int var) {
  MultiPoly r(nvars);
  for (int i = 0; i <= p.degree(); ++i) {
    MultiPoly::Exp e(nvars, 0);
    e[var] = (uint32_t)i;
    r.set(e, p.coeffs()[i]);
  }
  return r;
}

}  // namespace geosolve
