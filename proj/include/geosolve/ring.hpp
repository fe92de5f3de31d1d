#pragma once

#include <cassert>

#include "geosolve/rational.hpp"

namespace geosolve {

// Customization points for generic ring code. Every ring type used by the
// generic algorithms (matrices, polynomials, series, SLP expressions)
// overloads these. `like` carries context (variable counts, truncation caps,
// matrix dimensions) that a bare default constructor cannot know.

inline BigInt zero_like(const BigInt&) { return BigInt(0); }
inline BigInt one_like(const BigInt&) { return BigInt(1); }
inline bool is_zero(const BigInt& a) { return a == 0; }
inline bool is_one(const BigInt& a) { return a == 1; }

inline BigRat zero_like(const BigRat&) { return BigRat(0); }
inline BigRat one_like(const BigRat&) { return BigRat(1); }
inline bool is_zero(const BigRat& a) { return a == 0; }
inline bool is_one(const BigRat& a) { return a == 1; }

// Action of rational scalars on ring elements.
inline BigRat scalar_mul(const BigRat& v, const BigRat& s) { return v * s; }
inline BigInt scalar_mul(const BigInt& v, const BigRat& s) {
  assert(rat_is_integer(s));
  return v * s.get_num();
}

// Exact division; caller guarantees divisibility (or unit divisor).
inline BigRat ring_div(const BigRat& a, const BigRat& b) {
  if (b == 0) throw std::domain_error("division by zero");
  return a / b;
}
inline BigInt ring_div(const BigInt& a, const BigInt& b) { return int_divexact(a, b); }

}  // namespace geosolve
