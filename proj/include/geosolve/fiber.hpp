#pragma once

#include <memory>
#include <string>
#include <vector>

#include "geosolve/matrix.hpp"
#include "geosolve/qring.hpp"
#include "geosolve/slp.hpp"
#include "geosolve/unipoly.hpp"

namespace geosolve {

// One coordinate's parametrization by the primitive element: rho*X = v(T).
struct Parametrization {
  BigInt rho{1};
  UniPoly<BigInt> v;
  bool operator==(const Parametrization&) const = default;
};

// Description of a zero-dimensional variety: a primitive linear form
// lambda.X whose image T has minimal polynomial q, and per-variable
// parametrizations rho_i X_i = v_i(T) on the roots of q. All data integral
// and primitive.
struct GeometricResolution {
  std::vector<BigInt> lambda;
  UniPoly<BigInt> q;
  std::vector<Parametrization> params;

  int nvars() const { return (int)lambda.size(); }
  int degree() const { return q.degree(); }
  BigInt rho_product() const {
    BigInt r(1);
    for (const auto& p : params) r *= p.rho;
    return r;
  }
  bool operator==(const GeometricResolution&) const = default;
};

// Commuting matrices describing the multiplication tensor of the quotient
// algebra in the power basis of the primitive element.
struct MultiplicationTable {
  int dim = 0;
  Matrix<BigRat> companion_monic;      // companion matrix of q made monic
  std::vector<Matrix<BigRat>> mx;      // multiplication by X_1..X_n
};

// Fiber of the Noether projection at one level of the incremental solve.
struct LiftingFiber {
  int level = 0;                              // number of solved equations
  std::vector<std::vector<BigInt>> change;    // integer coordinate change A (n x n)
  std::vector<BigInt> point;                  // lifting point, length n - level
  GeometricResolution res;                    // fiber resolution in the last `level` variables
};

MultiplicationTable mult_table_from_resolution(const GeometricResolution& res);

struct ValidationReport {
  bool squarefree = false;        // (a) q squarefree over Q
  bool degrees = false;           // (b) deg v_i < deg q
  bool primitive = false;         // (c) q and each rho_i X_i - v_i primitive
  bool equations = false;         // (d) every system equation vanishes on the parametrization
  bool primitive_element = false; // (e) sum lambda_i v_i / rho_i == T mod q
  bool discriminant = false;      // (f) rho data compatible with res(q, q')
  std::vector<std::string> failures;

  bool ok() const {
    return squarefree && degrees && primitive && equations && primitive_element &&
           discriminant;
  }
};

// Exhaustive exact checking of a resolution against its defining system.
// `system` shares the resolution's variables (system.nvars == res.nvars()).
ValidationReport validate_resolution(const GeometricResolution& res, const Slp& system);

Height resolution_height(const GeometricResolution& res);

// Quotient-ring context Q[T]/(q made monic) plus the coordinate images
// v_i/rho_i; the common entry point for substitution checks.
struct ResidueView {
  std::shared_ptr<const QuotCtx<BigRat>> ctx;
  std::vector<QuotElt<BigRat>> coords;
};
ResidueView residue_view(const GeometricResolution& res);

std::string resolution_to_json(const GeometricResolution& res);
GeometricResolution resolution_from_json(const std::string& text);

}  // namespace geosolve
