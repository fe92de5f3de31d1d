#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "geosolve/fiber.hpp"
#include "geosolve/newton.hpp"
#include "geosolve/slp.hpp"

namespace geosolve {

struct SolveOptions {
  uint64_t seed = 0;
  int retries = 25;
  // Eager smoothness screening is skipped above this fiber degree; the
  // Newton lift's unit test catches the same failures one level later.
  int smooth_check_dim = 64;
};

struct LevelReport {
  int level = 0;
  int fiber_degree = 0;
  Height fiber_height;
  std::vector<BigInt> lifting_point;
  std::vector<BigInt> lambda;
  int curve_cap = 0;  // truncation used to reconstruct the level's curve
};

struct SolveResult {
  GeometricResolution resolution;            // original coordinates
  std::vector<std::vector<BigInt>> change;   // coordinate change Y = A X used
  std::vector<LiftingFiber> fibers;          // per-level fibers, changed coordinates
  std::vector<LevelReport> levels;
  int attempts = 0;
};

struct SolveError : std::runtime_error {
  int level;
  explicit SolveError(const std::string& msg, int lvl = 0)
      : std::runtime_error(msg), level(lvl) {}
};

// Random integer linear combinations reducing s > n+1 equations to n+1.
// Coefficients are sampled from [1, (n d)^2]; genericity is probabilistic.
Slp reduce_system(const Slp& system, long degree_bound, uint64_t seed);

// Geometric solution of a square system (first n outputs of `system`).
SolveResult solve_system(const Slp& system, const SolveOptions& opts = {});

// Primitive parts of every polynomial with consistent rho rescaling.
GeometricResolution clean_fiber(const GeometricResolution& res);

// Exact acceptance test for a candidate base point of the next level:
// discriminant, denominators and the eliminant of the next equation must all
// be nonzero at the point.
bool lifting_point_valid(const LiftedCurve& curve, const Slp& system, size_t next_output,
                         const std::vector<BigInt>& point, const BigInt& candidate);

// Data accepted for the next level: the (inherited) coordinate change, the
// extended primitive form, and the base point.
struct LiftingData {
  std::vector<std::vector<BigInt>> change;
  std::vector<BigInt> lambda;
  std::vector<BigInt> point;
  BigInt alpha;  // coefficient of the consumed variable in the new form
};
LiftingData choose_lifting_data(const LiftedCurve& curve, const Slp& system,
                                size_t next_output, const std::vector<BigInt>& point,
                                const std::vector<std::vector<BigInt>>& change,
                                uint64_t seed, int retries);

// Cuts the curve with the hypersurface of the given equation and re-solves
// the resulting bivariate system with a fresh primitive element. `point`
// carries the free coordinates of the curve's level.
GeometricResolution intersect_with_hypersurface(const LiftedCurve& curve, const Slp& system,
                                                size_t next_output,
                                                const std::vector<BigInt>& point,
                                                uint64_t seed, int retries);

// f restricted to the curve: lc-cleared bivariate residue modulo q (T-major).
BiPolyQ restrict_to_curve(const LiftedCurve& curve, const Slp& system, size_t output,
                          const std::vector<BigInt>& point);

struct ConsistencyVerdict {
  bool consistent = false;
  BigRat det;  // determinant of the homothety by the last equation
  std::optional<GeometricResolution> kernel;  // common zeros, when consistent
};

// Decides emptiness of V(f_1..f_{n+1}) by solving the first n equations and
// testing the homothety of the last one for unimodularity.
ConsistencyVerdict decide_consistency(const Slp& system, const SolveOptions& opts = {});
// Same decision against an already-solved square subsystem.
ConsistencyVerdict decide_consistency_with(const GeometricResolution& resolution,
                                           const Slp& system, size_t last_output);

// det of multiplication-by-f on the quotient algebra; matrix route for small
// degree, resultant route beyond (identical values).
BigRat homothety_det(const GeometricResolution& res, const Slp& system, size_t output);

// ---------- shared helpers ----------

// Program over the bound variables with the free coordinates pinned.
Slp specialize_free(const Slp& s, size_t num_outputs, int level,
                    const std::vector<BigInt>& point);

// Inputs replaced by rational linear combinations of fresh variables
// (same count): X_i := sum subst[i][v] Var_v.
Slp substitute_linear(const Slp& s, const std::vector<std::vector<BigRat>>& subst);

// Resolution of Y = A X data mapped back to the X coordinates.
GeometricResolution transform_resolution(const GeometricResolution& res,
                                         const std::vector<std::vector<BigInt>>& A);

std::vector<std::vector<BigRat>> invert_integer_matrix(
    const std::vector<std::vector<BigInt>>& A);

// Determinant of the Jacobian of the first `level` outputs with respect to
// all variables, as a single-output program.
Slp jacobian_det_slp(const Slp& system, int level);

}  // namespace geosolve
