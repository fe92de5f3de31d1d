#pragma once

#include <vector>

#include "geosolve/rational.hpp"
#include "geosolve/ring.hpp"

namespace geosolve {

// Certified rational bounds on log2 / exp2, accurate to well below 2^-32.
// Upper bounds round up, lower bounds round down, so bound chains built from
// them stay sound.
BigRat log2_upper(const BigInt& a);   // a >= 1
BigRat log2_lower(const BigInt& a);   // a >= 1
BigRat log2_upper(const BigRat& a);   // a > 0
BigRat log2_lower(const BigRat& a);   // a > 0
BigRat pow2_upper(const BigRat& e);   // >= 2^e

// Logarithmic bit-size measure: max{log2|a|, 1}, extended componentwise.
// Carried as an exact rational upper bound so downstream bound chains are
// certified. By convention height(0) = 1.
struct Height {
  BigRat v{1};

  Height() = default;
  explicit Height(BigRat value) : v(std::move(value)) {}

  bool operator==(const Height& o) const { return v == o.v; }
  bool operator<(const Height& o) const { return v < o.v; }
  bool operator<=(const Height& o) const { return v <= o.v; }
  bool operator>(const Height& o) const { return v > o.v; }
  bool operator>=(const Height& o) const { return v >= o.v; }

  Height max_with(const Height& o) const { return Height(v >= o.v ? v : o.v); }
  double approx() const { return v.get_d(); }
};

Height height(const BigInt& a);
Height height(const BigRat& a);  // max of numerator and denominator heights

template <class It>
Height height_range(It first, It last) {
  Height h;  // empty input floors at 1
  for (; first != last; ++first) h = h.max_with(height(*first));
  return h;
}

inline Height height(const std::vector<BigInt>& v) { return height_range(v.begin(), v.end()); }
inline Height height(const std::vector<BigRat>& v) { return height_range(v.begin(), v.end()); }

}  // namespace geosolve
