#pragma once

#include <cassert>
#include <map>
#include <stdexcept>
#include <vector>

#include "geosolve/ring.hpp"
#include "geosolve/unipoly.hpp"

namespace geosolve {

// Multivariate power series centered at an integer point, truncated at a
// total-degree cap. Sparse: only nonzero coefficients are stored, keyed by
// exponent vector. Arithmetic discards terms above the cap.
class TruncSeries {
 public:
  using Exp = std::vector<uint32_t>;

  TruncSeries() = default;
  TruncSeries(std::vector<BigInt> center, int cap)
      : center_(std::move(center)), cap_(cap) {}

  static TruncSeries constant(std::vector<BigInt> center, int cap, BigRat v) {
    TruncSeries s(std::move(center), cap);
    s.set(Exp(s.nvars(), 0), std::move(v));
    return s;
  }
  // The series of the i-th coordinate: p_i + (X_i - p_i).
  static TruncSeries coordinate(std::vector<BigInt> center, int cap, int i) {
    TruncSeries s(center, cap);
    s.set(Exp(s.nvars(), 0), BigRat(center[i]));
    if (cap >= 1) {
      Exp e(s.nvars(), 0);
      e[i] = 1;
      s.set(e, BigRat(1));
    }
    return s;
  }

  int nvars() const { return (int)center_.size(); }
  int cap() const { return cap_; }
  const std::vector<BigInt>& center() const { return center_; }
  const std::map<Exp, BigRat>& terms() const { return c_; }

  bool zero_p() const { return c_.empty(); }

  BigRat coeff(const Exp& e) const {
    auto it = c_.find(e);
    return it == c_.end() ? BigRat(0) : it->second;
  }
  BigRat constant_term() const { return coeff(Exp(nvars(), 0)); }

  void set(const Exp& e, BigRat v) {
    assert((int)e.size() == nvars());
    if (total_deg(e) > cap_) return;
    if (v == 0)
      c_.erase(e);
    else
      c_[e] = std::move(v);
  }

  static int total_deg(const Exp& e) {
    int d = 0;
    for (auto x : e) d += (int)x;
    return d;
  }

  TruncSeries truncated(int new_cap) const {
    if (new_cap >= cap_) {
      TruncSeries s = *this;
      s.cap_ = new_cap;  // widening keeps stored terms; higher ones are unknown-zero
      return s;
    }
    TruncSeries s(center_, new_cap);
    for (const auto& [e, v] : c_)
      if (total_deg(e) <= new_cap) s.c_[e] = v;
    return s;
  }

  TruncSeries operator-() const {
    TruncSeries r = *this;
    for (auto& [e, v] : r.c_) v = -v;
    return r;
  }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    assert(a.center_ == b.center_);
    TruncSeries r(a.center_, std::min(a.cap_, b.cap_));
    r.c_ = a.c_;
    for (const auto& [e, v] : b.c_) {
      auto it = r.c_.find(e);
      if (it == r.c_.end())
        r.c_[e] = v;
      else {
        it->second += v;
        if (it->second == 0) r.c_.erase(it);
      }
    }
    return r.truncated(r.cap_);
  }
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    assert(a.center_ == b.center_);
    TruncSeries r(a.center_, std::min(a.cap_, b.cap_));
    for (const auto& [ea, va] : a.c_) {
      int da = total_deg(ea);
      if (da > r.cap_) continue;
      for (const auto& [eb, vb] : b.c_) {
        if (da + total_deg(eb) > r.cap_) continue;
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
    }
    return r;
  }

  bool operator==(const TruncSeries& o) const {
    return center_ == o.center_ && c_ == o.c_;
  }

 private:
  std::vector<BigInt> center_;
  int cap_ = 0;
  std::map<Exp, BigRat> c_;
};

inline TruncSeries zero_like(const TruncSeries& s) {
  return TruncSeries(s.center(), s.cap());
}
inline TruncSeries one_like(const TruncSeries& s) {
  return TruncSeries::constant(s.center(), s.cap(), BigRat(1));
}
inline bool is_zero(const TruncSeries& s) { return s.zero_p(); }
inline bool is_one(const TruncSeries& s) {
  return s.terms().size() == 1 && s.constant_term() == 1;
}
inline TruncSeries scalar_mul(const TruncSeries& s, const BigRat& k) {
  TruncSeries r(s.center(), s.cap());
  if (k == 0) return r;
  for (const auto& [e, v] : s.terms()) r.set(e, v * k);
  return r;
}

// Inverse of a unit series: s * result == 1 up to the cap.
inline TruncSeries series_invert(const TruncSeries& s) {
  BigRat c0 = s.constant_term();
  if (c0 == 0) throw std::domain_error("non-unit series");
  // s = c0 (1 - t) with t of positive order; 1/s = (1/c0) sum t^k.
  TruncSeries one = one_like(s);
  TruncSeries t = one - scalar_mul(s, 1 / c0);
  TruncSeries acc = one;
  TruncSeries pw = one;
  for (int k = 1; k <= s.cap(); ++k) {
    pw = pw * t;
    if (pw.zero_p()) break;
    acc = acc + pw;
  }
  return scalar_mul(acc, 1 / c0);
}

inline TruncSeries ring_div(const TruncSeries& a, const TruncSeries& b) {
  return a * series_invert(b);
}

// One-variable helpers used by the curve lifting.

// Polynomial p(X) viewed as a series in X - center (exact when deg p <= cap).
inline TruncSeries series_of_poly_1v(const UniPoly<BigRat>& p, const BigInt& center, int cap) {
  TruncSeries x = TruncSeries::coordinate({center}, cap, 0);
  if (p.zero_p()) return zero_like(x);
  TruncSeries acc = TruncSeries::constant({center}, cap, p.lc());
  for (int i = p.degree() - 1; i >= 0; --i)
    acc = acc * x + TruncSeries::constant({center}, cap, p.coeffs()[i]);
  return acc;
}

// Reads a 1-variable series as a polynomial in X (re-expansion around 0).
// Exact when the underlying object is a polynomial of degree <= cap.
inline UniPoly<BigRat> poly_from_series_1v(const TruncSeries& s) {
  assert(s.nvars() == 1);
  // sum c_j (X - p)^j, Horner in (X - p)
  UniPoly<BigRat> shift(std::vector<BigRat>{BigRat(-s.center()[0]), BigRat(1)});
  UniPoly<BigRat> acc;
  for (int j = s.cap(); j >= 0; --j) {
    BigRat cj = s.coeff({(uint32_t)j});
    acc = acc * shift + UniPoly<BigRat>::constant(cj);
  }
  return acc;
}

}  // namespace geosolve
