#pragma once

#include <string>

#include "geosolve/fiber.hpp"
#include "geosolve/multipoly.hpp"
#include "geosolve/slp.hpp"

namespace geosolve {

// Pseudo-jacobian program: the determinant of the divided-difference matrix
// of the first n outputs, over 2n variables (X then Y). Restricting Y := X
// recovers the Jacobian determinant.
Slp pseudo_jacobian(const Slp& system);

// Shared matrices for the trace-formula operations on the quotient algebra.
struct TraceData {
  MultiplicationTable table;
  Matrix<BigRat> j1;        // Jacobian determinant at the multiplication matrices
  Matrix<BigRat> j1_adj;    // adjugate of j1
  BigRat j1_det;
  Matrix<MultiPoly> delta1; // pseudo-jacobian at (M_X, X), polynomial entries
};
TraceData make_trace_data(const GeometricResolution& res, const Slp& system);

// Degree-bounded representative of g's residue class: the trace-formula
// image Tr(J1^-1 g(M_X) Delta1), of total degree <= n(d-1).
MultiPoly lift_residue(const Slp& g, const MultiplicationTable& table, const Slp& system);
MultiPoly lift_residue(const Slp& g, const TraceData& td);

struct DivisionStep {
  BigRat theta;  // nonzero scalar
  MultiPoly q;   // quotient numerator: q*f == theta*g in the quotient algebra
};
// Requires f a non-zero-divisor dividing g in the algebra; the identity
// q(M_X) f(M_X) == theta g(M_X) is verified exactly on every call.
DivisionStep division_step(const Slp& f, const Slp& g, const TraceData& td);

// Integer certificate a - g_last * f_last in (f_1..f_n): a = alpha^N rho^M c
// scaled from the division step's theta, same multiplier on g.
struct BezoutWitness {
  BigInt a;
  MultiPoly g;     // integer coefficients
  long exp_alpha = 0;  // N
  long exp_rho = 0;    // M
};

// `system` carries f_1..f_n (matching the resolution) plus the target
// equation at `last_output`.
BezoutWitness bezout_witness(const GeometricResolution& res, const Slp& system,
                             size_t last_output);

std::string witness_to_json(const BezoutWitness& w);
BezoutWitness witness_from_json(const std::string& text);

}  // namespace geosolve
