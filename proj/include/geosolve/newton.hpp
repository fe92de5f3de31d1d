#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "geosolve/fiber.hpp"
#include "geosolve/series.hpp"
#include "geosolve/slp.hpp"

namespace geosolve {

// T-major bivariate polynomials: outer variable T, coefficients in X.
using BiPolyQ = UniPoly<UniPoly<BigRat>>;
using BiPolyZ = UniPoly<UniPoly<BigInt>>;

BiPolyQ to_rat_bipoly(const BiPolyZ& p);
BiPolyZ primitive_of_rat_bipoly(const BiPolyQ& p);  // integer-cleared primitive image

// Numerator/denominator program for the k-fold iterated Newton operator:
// outputs g_1..g_n, h with N^k = (g_1/h, ..., g_n/h) as a rational map.
struct NewtonIterate {
  int iterations = 0;
  Slp program;
};

// `system` must be square: n variables, first n outputs used.
NewtonIterate newton_numerators(const Slp& system, int k);

struct LiftError : std::runtime_error {
  enum class Kind { NotSmooth, NotPrimitive };
  Kind kind;
  LiftError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// One-dimensional reconstruction of the solution variety over a single free
// variable: minimal polynomial q(X, T) with coefficients of degree <= cap,
// and parametrizations rho_j(X) X_j = v_j(X, T) of the bound variables.
struct LiftedCurve {
  int level = 0;     // number of equations / bound variables
  int free_var = 0;  // index of the lifted variable in the full coordinate list
  BigInt center;     // lifting-point coordinate of the lifted variable
  int cap = 0;       // truncation degree used for the reconstruction

  BiPolyZ q;  // monic in T up to an integer factor
  struct CurveParam {
    UniPoly<BigInt> rho;
    BiPolyZ v;
  };
  std::vector<CurveParam> params;  // one per bound variable
  std::vector<BigInt> lambda;      // primitive form on the bound variables
};

// Reconstructs the curve over the free variable `free_var` from the fiber at
// `point` (values of the free variables, variable indices 0..n-level-1).
// `system` has n variables; its first `level` outputs define the fiber.
// delta_bound must be at least the degree of the solution curve for the
// polynomial readback to be exact; validate_curve detects shortfalls.
LiftedCurve lift_fiber(const Slp& system, int level, const std::vector<BigInt>& point,
                       int free_var, const GeometricResolution& fiber, int delta_bound);

// Residue ring Q(X)[T]/(q) of the curve with the parametrization as
// coordinate images of the bound variables.
struct CurveView {
  std::shared_ptr<const QuotCtx<RatFunc>> ctx;
  std::vector<QuotElt<RatFunc>> coords;
};
CurveView curve_view(const LiftedCurve& curve);

// Exact substitution check: every one of the first `level` equations reduces
// to zero modulo q after substituting the curve parametrization (non-lifted
// free variables pinned at `point`).
bool validate_curve(const LiftedCurve& curve, const Slp& system,
                    const std::vector<BigInt>& point);

// Specializing the lifted variable at the center must recover the input
// fiber resolution up to content.
bool curve_specializes_to_fiber(const LiftedCurve& curve, const GeometricResolution& fiber);

// Series-matrix Newton state exposed for the contraction property tests.
struct NewtonTrace {
  std::vector<std::vector<Matrix<TruncSeries>>> iterates;  // per step, per bound variable
};
LiftedCurve lift_fiber_traced(const Slp& system, int level,
                              const std::vector<BigInt>& point, int free_var,
                              const GeometricResolution& fiber, int delta_bound,
                              NewtonTrace* trace);

}  // namespace geosolve
