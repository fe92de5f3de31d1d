#include "geosolve/height.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace geosolve {

namespace {

// Working precision. The values we take logs of stay far below 2^(2^50),
// so 96 bits keeps the absolute error under 2^-40.
constexpr mpfr_prec_t kPrec = 96;

BigRat mpfr_to_rat(mpfr_t x) {
  mpq_t q;
  mpq_init(q);
  mpfr_get_q(q, x);
  BigRat out(q);
  mpq_clear(q);
  return out;
}

BigRat log2_of_int(const BigInt& a, mpfr_rnd_t rnd) {
  if (a < 1) throw std::domain_error("log2 of non-positive value");
  mpfr_t x, r;
  mpfr_init2(x, kPrec);
  mpfr_init2(r, kPrec);
  mpfr_set_z(x, a.get_mpz_t(), rnd);
  mpfr_log2(r, x, rnd);
  BigRat out = mpfr_to_rat(r);
  mpfr_clear(x);
  mpfr_clear(r);
  return out;
}

}  // namespace

BigRat log2_upper(const BigInt& a) { return log2_of_int(a, MPFR_RNDU); }
BigRat log2_lower(const BigInt& a) { return log2_of_int(a, MPFR_RNDD); }

BigRat log2_upper(const BigRat& a) {
  if (a <= 0) throw std::domain_error("log2 of non-positive value");
  return log2_upper(a.get_num()) - log2_lower(a.get_den());
}

BigRat log2_lower(const BigRat& a) {
  if (a <= 0) throw std::domain_error("log2 of non-positive value");
  return log2_lower(a.get_num()) - log2_upper(a.get_den());
}

BigRat pow2_upper(const BigRat& e) {
  mpfr_t x, r;
  mpfr_init2(x, kPrec);
  mpfr_init2(r, kPrec);
  mpfr_set_q(x, e.get_mpq_t(), MPFR_RNDU);
  mpfr_exp2(r, x, MPFR_RNDU);
  if (!mpfr_number_p(r)) {
    mpfr_clear(x);
    mpfr_clear(r);
    throw std::overflow_error("pow2_upper: exponent out of range");
  }
  BigRat out = mpfr_to_rat(r);
  mpfr_clear(x);
  mpfr_clear(r);
  return out;
}

Height height(const BigInt& a) {
  if (a == 0) return Height(BigRat(1));  // harmless floor, see README
  BigRat l = log2_upper(int_abs(a));
  return Height(l >= 1 ? l : BigRat(1));
}

Height height(const BigRat& a) {
  return height(a.get_num()).max_with(height(a.get_den()));
}

}  // namespace geosolve
