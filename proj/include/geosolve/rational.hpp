#pragma once

#include <gmpxx.h>

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace geosolve {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigInt int_gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline BigInt int_lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline BigInt int_pow(const BigInt& a, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
  return r;
}

inline BigInt int_abs(const BigInt& a) {
  BigInt r;
  mpz_abs(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

// Exact quotient; the divisor must divide.
inline BigInt int_divexact(const BigInt& a, const BigInt& b) {
  assert(b != 0 && a % b == 0);
  BigInt r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// floor(sqrt(a)) for a >= 0.
inline BigInt int_isqrt(const BigInt& a) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

inline size_t bit_length(const BigInt& a) {
  if (a == 0) return 0;
  return mpz_sizeinbase(a.get_mpz_t(), 2);
}

inline BigRat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  BigRat q(num, den);
  q.canonicalize();
  return q;
}

inline BigRat rat_pow(const BigRat& a, long e) {
  if (e == 0) return BigRat(1);
  BigRat base = a;
  unsigned long k = e > 0 ? (unsigned long)e : (unsigned long)(-e);
  BigRat r(1);
  BigRat acc = base;
  while (k) {
    if (k & 1) r *= acc;
    acc *= acc;
    k >>= 1;
  }
  if (e < 0) {
    if (r == 0) throw std::domain_error("zero to negative power");
    r = 1 / r;
  }
  return r;
}

inline bool rat_is_integer(const BigRat& a) { return a.get_den() == 1; }

inline std::string rat_to_string(const BigRat& a) {
  if (rat_is_integer(a)) return a.get_num().get_str();
  return a.get_num().get_str() + "/" + a.get_den().get_str();
}

inline BigRat rat_from_string(const std::string& s) {
  BigRat q(s);
  q.canonicalize();
  return q;
}

// Gaussian integer re + im*i.
struct GaussianInt {
  BigInt re{0};
  BigInt im{0};

  BigInt norm() const { return re * re + im * im; }      // p * conj(p)
  BigInt twice_real() const { return 2 * re; }           // p + conj(p)
  bool operator==(const GaussianInt&) const = default;
};

}  // namespace geosolve
