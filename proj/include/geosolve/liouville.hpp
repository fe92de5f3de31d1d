#pragma once

#include <string>
#include <utility>
#include <vector>

#include "geosolve/duality.hpp"
#include "geosolve/fiber.hpp"
#include "geosolve/slp.hpp"

namespace geosolve {

// Rational approximation a = (p_1/q, ..., p_n/q) at level epsilon.
struct ApproximationQuery {
  std::vector<GaussianInt> numerators;
  BigInt denominator{1};
  BigRat epsilon{1};
};

// Certified lower bound on log2 of the denominator of any approximation at
// the query's level, with the intermediate bounds that produced it. Every
// field is an exact rational from a sound rounding direction.
struct BoundReport {
  BigRat log2_denominator_bound;
  BigRat dv_bound;       // denominator bound for the variety
  BigRat norm_bound;     // upper bound on the norm of any solution
  BigRat g_value_log2;   // upper bound on log2 |g(alpha)|
  std::string thm_form;  // the general inequality with the constant C symbolic
  std::vector<std::string> trace;
};

// (denominator bound, norm bound) for the variety of a validated resolution.
std::pair<BigRat, BigRat> norm_denominator_bounds(const GeometricResolution& res);

// (q X_1 - p)(q X_1 - conj p): integer-coefficient quadratic in X_1.
Slp build_separating_polynomial(const GaussianInt& p, const BigInt& q, int nvars);

BoundReport certified_denominator_bound(const ApproximationQuery& query,
                                        const BezoutWitness& witness,
                                        const GeometricResolution& res);

std::string bound_report_to_json(const BoundReport& r);

// Dense polynomial as a program (sum of binary-powered monomials).
Slp slp_from_dense(const MultiPoly& g, int nvars);

// Sturm-sequence real-root isolation over Q: disjoint intervals (lo, hi],
// one per real root.
std::vector<std::pair<BigRat, BigRat>> isolate_real_roots(const UniPoly<BigRat>& p);
// Bisection refinement until hi - lo <= width (root kept inside).
std::pair<BigRat, BigRat> refine_root(const UniPoly<BigRat>& p,
                                      std::pair<BigRat, BigRat> iv, const BigRat& width);
int sturm_sign_changes(const std::vector<UniPoly<BigRat>>& chain, const BigRat& x);
std::vector<UniPoly<BigRat>> sturm_chain(const UniPoly<BigRat>& p);

}  // namespace geosolve
