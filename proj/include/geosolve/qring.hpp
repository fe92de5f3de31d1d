#pragma once

#include <memory>
#include <stdexcept>

#include "geosolve/unipoly.hpp"

namespace geosolve {

// Rational function field over a field-coefficient polynomial ring,
// normalized so gcd(num, den) = 1 and den is monic.
struct RatFunc {
  UniPoly<BigRat> num;
  UniPoly<BigRat> den = UniPoly<BigRat>::constant(BigRat(1));

  RatFunc() = default;
  explicit RatFunc(UniPoly<BigRat> n) : num(std::move(n)) {}
  RatFunc(UniPoly<BigRat> n, UniPoly<BigRat> d) : num(std::move(n)), den(std::move(d)) {
    normalize();
  }

  static RatFunc constant(BigRat v) { return RatFunc(UniPoly<BigRat>::constant(std::move(v))); }
  static RatFunc variable() { return RatFunc(UniPoly<BigRat>::variable(BigRat(1))); }

  void normalize() {
    if (den.zero_p()) throw std::domain_error("rational function with zero denominator");
    if (num.zero_p()) {
      den = UniPoly<BigRat>::constant(BigRat(1));
      return;
    }
    UniPoly<BigRat> g = poly_gcd(num, den);
    if (g.degree() > 0) {
      num = divrem(num, g).first;
      den = divrem(den, g).first;
    }
    BigRat l = den.lc();
    num = scalar_mul(num, 1 / l);
    den = scalar_mul(den, 1 / l);
  }

  bool zero_p() const { return num.zero_p(); }

  RatFunc operator-() const {
    RatFunc r = *this;
    r.num = -r.num;
    return r;
  }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.num, a.den * b.den);
  }
  bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
};

inline RatFunc zero_like(const RatFunc&) { return RatFunc(); }
inline RatFunc one_like(const RatFunc&) { return RatFunc::constant(BigRat(1)); }
inline bool is_zero(const RatFunc& f) { return f.zero_p(); }
inline bool is_one(const RatFunc& f) {
  return f.num.degree() == 0 && f.den.degree() == 0 && f.num.coeffs()[0] == 1;
}
inline RatFunc scalar_mul(const RatFunc& f, const BigRat& s) {
  RatFunc r = f;
  r.num = scalar_mul(r.num, s);
  if (s == 0) r.den = UniPoly<BigRat>::constant(BigRat(1));
  return r;
}
inline RatFunc ring_div(const RatFunc& a, const RatFunc& b) {
  if (b.zero_p()) throw std::domain_error("division by zero rational function");
  return RatFunc(a.num * b.den, a.den * b.num);
}

// Residue-class ring F[T]/(q) for a monic modulus q over a field-like
// coefficient ring F. The modulus is shared by all elements of one ring.
template <class F>
struct QuotCtx {
  UniPoly<F> modulus;  // monic
};

template <class F>
class QuotElt {
 public:
  QuotElt() = default;
  QuotElt(std::shared_ptr<const QuotCtx<F>> ctx, UniPoly<F> value)
      : ctx_(std::move(ctx)), v_(std::move(value)) {
    reduce();
  }

  static QuotElt make(std::shared_ptr<const QuotCtx<F>> ctx, UniPoly<F> value) {
    return QuotElt(std::move(ctx), std::move(value));
  }
  static QuotElt generator(std::shared_ptr<const QuotCtx<F>> ctx) {
    const F like = ctx->modulus.lc();
    return QuotElt(std::move(ctx), UniPoly<F>::variable(like));
  }

  const UniPoly<F>& value() const { return v_; }
  const std::shared_ptr<const QuotCtx<F>>& ctx() const { return ctx_; }
  bool zero_p() const { return v_.zero_p(); }

  QuotElt operator-() const { return QuotElt(ctx_, -v_, no_reduce{}); }
  friend QuotElt operator+(const QuotElt& a, const QuotElt& b) {
    return QuotElt(a.pick(b), a.v_ + b.v_, no_reduce{});
  }
  friend QuotElt operator-(const QuotElt& a, const QuotElt& b) {
    return QuotElt(a.pick(b), a.v_ - b.v_, no_reduce{});
  }
  friend QuotElt operator*(const QuotElt& a, const QuotElt& b) {
    return QuotElt(a.pick(b), a.v_ * b.v_);
  }
  bool operator==(const QuotElt& o) const { return v_ == o.v_; }

 private:
  struct no_reduce {};
  QuotElt(std::shared_ptr<const QuotCtx<F>> ctx, UniPoly<F> value, no_reduce)
      : ctx_(std::move(ctx)), v_(std::move(value)) {}

  std::shared_ptr<const QuotCtx<F>> pick(const QuotElt& o) const { return ctx_ ? ctx_ : o.ctx_; }

  void reduce() {
    if (ctx_ && !v_.zero_p() && v_.degree() >= ctx_->modulus.degree())
      v_ = poly_mod(v_, ctx_->modulus);
  }

  std::shared_ptr<const QuotCtx<F>> ctx_;
  UniPoly<F> v_;
};

template <class F>
QuotElt<F> zero_like(const QuotElt<F>& e) {
  return QuotElt<F>::make(e.ctx(), UniPoly<F>());
}
template <class F>
QuotElt<F> one_like(const QuotElt<F>& e) {
  const F like = e.ctx()->modulus.lc();
  return QuotElt<F>::make(e.ctx(), UniPoly<F>::constant(one_like(like)));
}
template <class F>
bool is_zero(const QuotElt<F>& e) {
  return e.zero_p();
}
template <class F>
bool is_one(const QuotElt<F>& e) {
  return e.value().degree() == 0 && is_one(e.value().coeffs()[0]);
}
template <class F>
QuotElt<F> scalar_mul(const QuotElt<F>& e, const BigRat& s) {
  return QuotElt<F>::make(e.ctx(), scalar_mul(e.value(), s));
}

}  // namespace geosolve
