#pragma once

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "geosolve/height.hpp"
#include "geosolve/ring.hpp"

namespace geosolve {

// Dense univariate polynomial over a ring parameter, coefficients stored low
// degree to high with no trailing zeros. The zero polynomial is the empty
// sequence (degree -1).
template <class R>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<R> coeffs) : c_(std::move(coeffs)) { normalize(); }

  static UniPoly zero() { return UniPoly(); }
  static UniPoly constant(R v) {
    UniPoly p;
    if (!is_zero(v)) p.c_.push_back(std::move(v));
    return p;
  }
  // like is a context sample for minting 0/1 coefficients.
  static UniPoly monomial(const R& like, int deg, const R& coeff) {
    UniPoly p;
    if (is_zero(coeff)) return p;
    p.c_.assign(deg + 1, zero_like(like));
    p.c_[deg] = coeff;
    return p;
  }
  static UniPoly variable(const R& like) { return monomial(like, 1, one_like(like)); }

  int degree() const { return (int)c_.size() - 1; }
  bool zero_p() const { return c_.empty(); }
  const std::vector<R>& coeffs() const { return c_; }
  std::vector<R>& coeffs_mut() { return c_; }

  const R& lc() const {
    assert(!c_.empty());
    return c_.back();
  }
  // Coefficient of T^i; `like` supplies context when i exceeds the degree.
  R coeff_or_zero(int i, const R& like) const {
    if (i < 0 || i >= (int)c_.size()) return zero_like(like);
    return c_[i];
  }

  void normalize() {
    while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
  }

  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    r.c_.reserve(std::max(a.c_.size(), b.c_.size()));
    size_t n = std::max(a.c_.size(), b.c_.size());
    for (size_t i = 0; i < n; ++i) {
      if (i < a.c_.size() && i < b.c_.size())
        r.c_.push_back(a.c_[i] + b.c_[i]);
      else if (i < a.c_.size())
        r.c_.push_back(a.c_[i]);
      else
        r.c_.push_back(b.c_[i]);
    }
    r.normalize();
    return r;
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.zero_p() || b.zero_p()) return UniPoly();
    UniPoly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, zero_like(a.c_[0]));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
    }
    r.normalize();
    return r;
  }

  bool operator==(const UniPoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == o.c_[i])) return false;
    return true;
  }

  UniPoly mul_coeff(const R& s) const {
    if (is_zero(s)) return UniPoly();
    UniPoly r = *this;
    for (auto& x : r.c_) x = x * s;
    r.normalize();
    return r;
  }

  UniPoly shift_up(int k) const {  // multiply by T^k
    if (zero_p() || k == 0) return *this;
    UniPoly r;
    r.c_.assign(c_.size() + k, zero_like(c_[0]));
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i + k] = c_[i];
    return r;
  }

  UniPoly derivative() const {
    UniPoly r;
    for (size_t i = 1; i < c_.size(); ++i) r.c_.push_back(scalar_mul(c_[i], BigRat((long)i)));
    r.normalize();
    return r;
  }

  // Horner evaluation at a point of the same ring.
  R eval(const R& x) const {
    if (zero_p()) return zero_like(x);
    R acc = c_.back();
    for (int i = (int)c_.size() - 2; i >= 0; --i) acc = acc * x + c_[i];
    return acc;
  }

  // Horner evaluation into another ring; embed converts coefficients.
  template <class S, class Embed>
  S eval_in(const S& x, Embed embed) const {
    if (zero_p()) return zero_like(x);
    S acc = embed(c_.back());
    for (int i = (int)c_.size() - 2; i >= 0; --i) acc = acc * x + embed(c_[i]);
    return acc;
  }

  template <class S, class Map>
  UniPoly<S> map_coeffs(Map f) const {
    std::vector<S> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(f(x));
    return UniPoly<S>(std::move(out));
  }

 private:
  std::vector<R> c_;
};

template <class R>
UniPoly<R> zero_like(const UniPoly<R>&) {
  return UniPoly<R>();
}
// one_like on a zero polynomial has no coefficient context; all generic call
// sites pass nonzero samples.
template <class R>
UniPoly<R> one_like(const UniPoly<R>& like) {
  assert(!like.zero_p());
  return UniPoly<R>::constant(one_like(like.coeffs()[0]));
}
template <class R>
bool is_zero(const UniPoly<R>& p) {
  return p.zero_p();
}
template <class R>
bool is_one(const UniPoly<R>& p) {
  return p.degree() == 0 && is_one(p.coeffs()[0]);
}
template <class R>
UniPoly<R> scalar_mul(const UniPoly<R>& p, const BigRat& s) {
  if (s == 0) return UniPoly<R>();
  UniPoly<R> r = p;
  for (auto& x : r.coeffs_mut()) x = scalar_mul(x, s);
  r.normalize();
  return r;
}

// ---------- division ----------

// Division by a divisor whose leading coefficient is a unit handled by
// ring_div (fields, or monic divisors over any ring).
template <class R>
std::pair<UniPoly<R>, UniPoly<R>> divrem(const UniPoly<R>& a, const UniPoly<R>& b) {
  if (b.zero_p()) throw std::domain_error("polynomial division by zero");
  UniPoly<R> q, r = a;
  if (a.degree() < b.degree()) return {q, r};
  std::vector<R> qc(a.degree() - b.degree() + 1, zero_like(b.lc()));
  while (!r.zero_p() && r.degree() >= b.degree()) {
    R f = ring_div(r.lc(), b.lc());
    int k = r.degree() - b.degree();
    qc[k] = f;
    r = r - b.mul_coeff(f).shift_up(k);
  }
  return {UniPoly<R>(std::move(qc)), r};
}

template <class R>
UniPoly<R> poly_mod(const UniPoly<R>& a, const UniPoly<R>& b) {
  return divrem(a, b).second;
}

// Exact quotient; throws if the division leaves a remainder.
template <class R>
UniPoly<R> exact_div(const UniPoly<R>& a, const UniPoly<R>& b) {
  if (a.zero_p()) return a;
  UniPoly<R> q, r = a;
  std::vector<R> qc(a.degree() - b.degree() + 1, zero_like(b.lc()));
  while (!r.zero_p() && r.degree() >= b.degree()) {
    R f = ring_div(r.lc(), b.lc());
    int k = r.degree() - b.degree();
    qc[k] = f;
    r = r - b.mul_coeff(f).shift_up(k);
  }
  if (!r.zero_p()) throw std::domain_error("exact_div: not divisible");
  return UniPoly<R>(std::move(qc));
}

// Polynomial rings divide exactly or not at all.
template <class R>
UniPoly<R> ring_div(const UniPoly<R>& a, const UniPoly<R>& b) {
  return exact_div(a, b);
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r. Returns r.
template <class R>
UniPoly<R> pseudo_rem(const UniPoly<R>& a, const UniPoly<R>& b) {
  if (b.zero_p()) throw std::domain_error("pseudo_rem by zero");
  UniPoly<R> r = a;
  int e = a.degree() - b.degree() + 1;
  const R& d = b.lc();
  while (!r.zero_p() && r.degree() >= b.degree()) {
    int k = r.degree() - b.degree();
    UniPoly<R> t = b.mul_coeff(r.lc()).shift_up(k);
    r = r.mul_coeff(d) - t;
    --e;
  }
  for (; e > 0; --e) r = r.mul_coeff(d);
  return r;
}

// ---------- integer content ----------

// gcd of every integer appearing in a (possibly nested) polynomial over Z.
inline BigInt int_content(const BigInt& a) { return int_abs(a); }
template <class R>
BigInt int_content(const UniPoly<R>& p) {
  BigInt g(0);
  for (const auto& c : p.coeffs()) {
    g = int_gcd(g, int_content(c));
    if (g == 1) break;
  }
  return g;
}

inline BigInt den_lcm(const BigRat& a) { return a.get_den(); }
template <class R>
BigInt den_lcm(const UniPoly<R>& p) {
  BigInt l(1);
  for (const auto& c : p.coeffs()) l = int_lcm(l, den_lcm(c));
  return l;
}

inline BigInt to_int(const BigRat& a) {
  assert(rat_is_integer(a));
  return a.get_num();
}

inline UniPoly<BigInt> to_int_poly(const UniPoly<BigRat>& p) {
  return p.map_coeffs<BigInt>([](const BigRat& c) { return to_int(c); });
}
inline UniPoly<BigRat> to_rat_poly(const UniPoly<BigInt>& p) {
  return p.map_coeffs<BigRat>([](const BigInt& c) { return BigRat(c); });
}

// Clears denominators: returns (integer polynomial, common denominator d)
// with p = result / d.
inline std::pair<UniPoly<BigInt>, BigInt> clear_denominators(const UniPoly<BigRat>& p) {
  BigInt d = den_lcm(p);
  UniPoly<BigRat> q = scalar_mul(p, BigRat(d));
  return {to_int_poly(q), d};
}

// content > 0, primitive part with positive leading coefficient;
// content * primitive = +-p.
inline std::pair<BigInt, UniPoly<BigInt>> content_primitive(const UniPoly<BigInt>& p) {
  if (p.zero_p()) throw std::domain_error("zero has no content");
  BigInt c = int_content(p);
  UniPoly<BigInt> prim = p.map_coeffs<BigInt>([&](const BigInt& x) { return int_divexact(x, c); });
  if (prim.lc() < 0) prim = -prim;
  return {c, prim};
}

inline UniPoly<BigInt> primitive_part(const UniPoly<BigInt>& p) {
  return content_primitive(p).second;
}

// Primitive integer image of a rational polynomial (positive lc).
inline UniPoly<BigInt> primitive_of_rat(const UniPoly<BigRat>& p) {
  if (p.zero_p()) throw std::domain_error("zero has no content");
  return primitive_part(clear_denominators(p).first);
}

// ---------- gcd over Q ----------

template <class R>
UniPoly<R> make_monic(const UniPoly<R>& p) {
  if (p.zero_p()) return p;
  UniPoly<R> r = p;
  R inv = ring_div(one_like(p.lc()), p.lc());
  for (auto& c : r.coeffs_mut()) c = c * inv;
  return r;
}

// gcd of integer polynomials via a primitive pseudo-remainder sequence
// (content stripped each step to control coefficient growth).
inline UniPoly<BigInt> gcd_primitive(UniPoly<BigInt> a, UniPoly<BigInt> b) {
  if (a.zero_p()) return b.zero_p() ? b : primitive_part(b);
  if (b.zero_p()) return primitive_part(a);
  a = primitive_part(a);
  b = primitive_part(b);
  while (!b.zero_p()) {
    if (a.degree() < b.degree()) std::swap(a, b);
    if (b.degree() == 0) return UniPoly<BigInt>::constant(BigInt(1));
    UniPoly<BigInt> r = pseudo_rem(a, b);
    a = std::move(b);
    b = r.zero_p() ? r : primitive_part(r);
  }
  return a;
}

// Monic gcd over Q. Errors if both inputs are zero.
inline UniPoly<BigRat> poly_gcd(const UniPoly<BigRat>& a, const UniPoly<BigRat>& b) {
  if (a.zero_p() && b.zero_p()) throw std::domain_error("gcd(0,0) undefined");
  if (a.zero_p()) return make_monic(b);
  if (b.zero_p()) return make_monic(a);
  UniPoly<BigInt> g = gcd_primitive(primitive_of_rat(a), primitive_of_rat(b));
  return make_monic(to_rat_poly(g));
}

inline UniPoly<BigRat> squarefree_part(const UniPoly<BigRat>& p) {
  if (p.degree() <= 0) return make_monic(p);
  UniPoly<BigRat> g = poly_gcd(p, p.derivative());
  if (g.degree() == 0) return make_monic(p);
  return make_monic(divrem(p, g).first);
}

// Extended Euclid over a field-coefficient ring: returns (g, u, v) with
// u*a + v*b = g, g monic.
template <class F>
std::tuple<UniPoly<F>, UniPoly<F>, UniPoly<F>> poly_xgcd(const UniPoly<F>& a,
                                                         const UniPoly<F>& b) {
  if (a.zero_p() && b.zero_p()) throw std::domain_error("xgcd(0,0) undefined");
  const F like = a.zero_p() ? b.lc() : a.lc();
  UniPoly<F> r0 = a, r1 = b;
  UniPoly<F> s0 = UniPoly<F>::constant(one_like(like)), s1;
  UniPoly<F> t0, t1 = UniPoly<F>::constant(one_like(like));
  while (!r1.zero_p()) {
    auto [q, r2] = divrem(r0, r1);
    UniPoly<F> s2 = s0 - q * s1;
    UniPoly<F> t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  F inv = ring_div(one_like(r0.lc()), r0.lc());
  return {r0.mul_coeff(inv), s0.mul_coeff(inv), t0.mul_coeff(inv)};
}

// Inverse of a mod m over a field-coefficient ring (m monic, gcd(a,m)=1).
template <class F>
UniPoly<F> inverse_mod(const UniPoly<F>& a, const UniPoly<F>& m) {
  auto [g, u, v] = poly_xgcd(a, m);
  if (g.degree() != 0) throw std::domain_error("inverse_mod: not invertible");
  return poly_mod(u, m);
}

// ---------- subresultant PRS / resultant ----------

// Subresultant pseudo-remainder sequence (Collins/Brown). Returns the chain
// starting with (a, b); every member vanishes at the common roots of a and b.
template <class R>
std::vector<UniPoly<R>> subresultant_prs(const UniPoly<R>& a, const UniPoly<R>& b) {
  std::vector<UniPoly<R>> chain;
  if (a.zero_p() || b.zero_p()) {
    if (!a.zero_p()) chain.push_back(a);
    if (!b.zero_p()) chain.push_back(b);
    return chain;
  }
  UniPoly<R> A = a, B = b;
  if (A.degree() < B.degree()) std::swap(A, B);
  chain.push_back(A);
  chain.push_back(B);
  R g = one_like(A.lc());
  R h = one_like(A.lc());
  while (true) {
    int delta = A.degree() - B.degree();
    UniPoly<R> rem = pseudo_rem(A, B);
    if (rem.zero_p()) break;
    R divisor = g;
    for (int i = 0; i < delta; ++i) divisor = divisor * h;
    UniPoly<R> C = rem.template map_coeffs<R>([&](const R& x) { return ring_div(x, divisor); });
    A = std::move(B);
    B = std::move(C);
    chain.push_back(B);
    g = A.lc();
    // h = g^delta / h^(delta-1)
    if (delta > 0) {
      R num = g;
      for (int i = 1; i < delta; ++i) num = num * g;
      R den = one_like(h);
      for (int i = 1; i < delta; ++i) den = den * h;
      h = ring_div(num, den);
    }
    if (B.degree() == 0) break;
  }
  return chain;
}

// Resultant over an integral domain with exact division (subresultant PRS).
template <class R>
R resultant(const UniPoly<R>& a, const UniPoly<R>& b) {
  if (a.zero_p()) {
    if (b.degree() == 0) return one_like(b.lc());
    return zero_like(b.zero_p() ? R{} : b.lc());
  }
  if (b.zero_p()) {
    if (a.degree() == 0) return one_like(a.lc());
    return zero_like(a.lc());
  }
  if (a.degree() == 0) {
    R r = one_like(a.lc());
    for (int i = 0; i < b.degree(); ++i) r = r * a.coeffs()[0];
    return r;
  }
  if (b.degree() == 0) {
    R r = one_like(b.lc());
    for (int i = 0; i < a.degree(); ++i) r = r * b.coeffs()[0];
    return r;
  }
  UniPoly<R> A = a, B = b;
  bool negate = false;
  if (A.degree() < B.degree()) {
    if ((A.degree() & 1) && (B.degree() & 1)) negate = !negate;
    std::swap(A, B);
  }
  R g = one_like(A.lc());
  R h = one_like(A.lc());
  while (true) {
    int delta = A.degree() - B.degree();
    if ((A.degree() & 1) && (B.degree() & 1)) negate = !negate;
    UniPoly<R> rem = pseudo_rem(A, B);
    if (rem.zero_p()) return zero_like(A.lc());  // common factor of positive degree
    R divisor = g;
    for (int i = 0; i < delta; ++i) divisor = divisor * h;
    UniPoly<R> C = rem.template map_coeffs<R>([&](const R& x) { return ring_div(x, divisor); });
    A = std::move(B);
    B = std::move(C);
    g = A.lc();
    if (delta > 0) {
      R num = g;
      for (int i = 1; i < delta; ++i) num = num * g;
      R den = one_like(h);
      for (int i = 1; i < delta; ++i) den = den * h;
      h = ring_div(num, den);
    }
    if (B.degree() == 0) {
      // h' = lc(B)^(deg A) / h^(deg A - 1)
      R num = one_like(B.lc());
      for (int i = 0; i < A.degree(); ++i) num = num * B.coeffs()[0];
      R den = one_like(h);
      for (int i = 1; i < A.degree(); ++i) den = den * h;
      R res = ring_div(num, den);
      return negate ? -res : res;
    }
  }
}

// ---------- misc helpers ----------

template <class R>
Height height(const UniPoly<R>& p) {
  Height h;
  for (const auto& c : p.coeffs()) h = h.max_with(height(c));
  return h;
}

// Composition p(q(T)).
template <class R>
UniPoly<R> compose(const UniPoly<R>& p, const UniPoly<R>& q) {
  if (p.zero_p()) return p;
  UniPoly<R> acc = UniPoly<R>::constant(p.lc());
  for (int i = p.degree() - 1; i >= 0; --i) {
    acc = acc * q + UniPoly<R>::constant(p.coeffs()[i]);
  }
  return acc;
}

template <class R>
std::string poly_to_string(const UniPoly<R>& p, const std::string& var);

inline std::string coeff_str(const BigInt& c) { return c.get_str(); }
inline std::string coeff_str(const BigRat& c) { return rat_to_string(c); }

template <class R>
std::string poly_to_string(const UniPoly<R>& p, const std::string& var) {
  if (p.zero_p()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const auto& c = p.coeffs()[i];
    if (is_zero(c)) continue;
    if (!out.empty()) out += " + ";
    out += coeff_str(c);
    if (i > 0) out += "*" + var + "^" + std::to_string(i);
  }
  return out;
}

}  // namespace geosolve
