#include <doctest.h>

#include <random>

#include "geosolve/solver.hpp"
#include "oracles.hpp"

using namespace geosolve;

namespace {

UniPoly<BigInt> ipoly(std::initializer_list<long> coeffs) {
  std::vector<BigInt> c;
  for (long v : coeffs) c.emplace_back(v);
  return UniPoly<BigInt>(std::move(c));
}

// roots of the resolution through the parametrization reproduce a point set
bool resolves_points(const GeometricResolution& r,
                     const std::vector<std::vector<BigRat>>& pts) {
  // every point must satisfy rho_i x_i = v_i(lambda.x) and q(lambda.x) = 0
  UniPoly<BigRat> q = to_rat_poly(r.q);
  for (const auto& p : pts) {
    BigRat u(0);
    for (int i = 0; i < r.nvars(); ++i) u += BigRat(r.lambda[i]) * p[i];
    if (q.eval(u) != 0) return false;
    for (int i = 0; i < r.nvars(); ++i) {
      if (BigRat(r.params[i].rho) * p[i] != to_rat_poly(r.params[i].v).eval(u))
        return false;
    }
  }
  return (int)pts.size() == r.degree();
}

// u-eliminant through iterated resultants for two equations: the minimal
// polynomial of lambda.X divides it (up to content).
UniPoly<BigRat> eliminant2(const MultiPoly& f1, const MultiPoly& f2,
                           const std::vector<BigInt>& lambda) {
  // polynomials in (X1, X2, S): h = S - l1 X1 - l2 X2; eliminate X2 then X1.
  auto lift3 = [](const MultiPoly& f) {
    MultiPoly g(3);
    for (const auto& [e, c] : f.terms()) g.set({e[0], e[1], 0}, c);
    return g;
  };
  MultiPoly h(3);
  h.set({0, 0, 1}, BigRat(1));
  h.set({1, 0, 0}, BigRat(-BigInt(lambda[0])));
  h.set({0, 1, 0}, BigRat(-BigInt(lambda[1])));
  // X2-major view over Q[X1][S]
  auto tower = [](const MultiPoly& f, int var) {
    auto cols = f.coeffs_in(var);
    std::vector<UniPoly<UniPoly<BigRat>>> coeffs;
    for (const auto& c : cols) {
      auto c1 = c.coeffs_in(0);  // X1 powers
      std::vector<UniPoly<BigRat>> inner;
      for (const auto& cc : c1) {
        std::vector<BigRat> sc(cc.degree_in(2) + 1, BigRat(0));
        for (const auto& [e, v] : cc.terms()) sc[e[2]] = v;
        inner.push_back(UniPoly<BigRat>(std::move(sc)));
      }
      coeffs.push_back(UniPoly<UniPoly<BigRat>>(std::move(inner)));
    }
    return UniPoly<UniPoly<UniPoly<BigRat>>>(std::move(coeffs));
  };
  auto g1 = tower(lift3(f1), 1);
  auto hh = tower(h, 1);
  auto g2 = tower(lift3(f2), 1);
  auto e1 = resultant(g1, hh);  // in (X1-major, S)
  auto e2 = resultant(g2, hh);
  return resultant(e1, e2);  // in S
}

}  // namespace

TEST_CASE("chain system n = 2") {
  Slp sys = oracles::chain_system(2);
  SolveResult r = solve_system(sys);
  CHECK(r.resolution.degree() == 2);
  CHECK(validate_resolution(r.resolution, sys).ok());
  // the two solutions are (w, -w-1) for w a primitive cube root of unity;
  // check via the eliminant oracle: q divides the iterated resultant
  auto fs = oracles::dense(sys);
  UniPoly<BigRat> e = eliminant2(fs[0], fs[1], r.resolution.lambda);
  REQUIRE(!e.zero_p());
  UniPoly<BigRat> q = make_monic(to_rat_poly(r.resolution.q));
  CHECK(divrem(e, q).second.zero_p());
}

TEST_CASE("boolean cube n = 2 enumerates {0,1}^2") {
  Slp sys = oracles::boolean_system(2);
  SolveResult r = solve_system(sys);
  CHECK(r.resolution.degree() == 4);
  CHECK(validate_resolution(r.resolution, sys).ok());
  std::vector<std::vector<BigRat>> pts = {
      {BigRat(0), BigRat(0)}, {BigRat(0), BigRat(1)},
      {BigRat(1), BigRat(0)}, {BigRat(1), BigRat(1)}};
  CHECK(resolves_points(r.resolution, pts));
}

TEST_CASE("degenerate input is diagnosed") {
  Slp sys = parse_system({"X1^2", "X1-1"}, {"X1", "X2"});
  CHECK_THROWS_AS(solve_system(sys, SolveOptions{0, 3}), SolveError);
}

TEST_CASE("intersection: line cuts the parabola-type curve") {
  // curve q = T^2 - X1 (bound variable X2 = T), cut with X2 - 3
  Slp sys = parse_system({"X2^2-X1", "X2-3"}, {"X1", "X2"});
  LiftedCurve curve;
  curve.level = 1;
  curve.free_var = 0;
  curve.center = 1;
  curve.cap = 2;
  curve.lambda = {BigInt(1)};
  curve.q = BiPolyZ(std::vector<UniPoly<BigInt>>{ipoly({0, -1}), UniPoly<BigInt>(),
                                                 UniPoly<BigInt>::constant(BigInt(1))});
  curve.params = {LiftedCurve::CurveParam{UniPoly<BigInt>::constant(BigInt(1)),
                                          BiPolyZ(std::vector<UniPoly<BigInt>>{
                                              UniPoly<BigInt>(), ipoly({1})})}};
  GeometricResolution res = intersect_with_hypersurface(curve, sys, 1, {BigInt(1)}, 0, 25);
  CHECK(res.degree() == 1);
  CHECK(resolves_points(res, {{BigRat(9), BigRat(3)}}));
  Slp spec = specialize_free(sys, 2, 2, {});
  CHECK(validate_resolution(res, spec).ok());

  // the same hypersurface again: not a regular sequence
  Slp sys2 = parse_system({"X2^2-X1", "X2^2-X1"}, {"X1", "X2"});
  CHECK_THROWS_AS(intersect_with_hypersurface(curve, sys2, 1, {BigInt(1)}, 0, 5),
                  SolveError);
}

TEST_CASE("intersection: the chain family's second step") {
  // curve q = T - X1^2 from X2 - X1^2 (bound X2), cut with X1^2 + X1 + 1
  Slp sys = parse_system({"X2-X1^2", "X1^2+X1+1"}, {"X1", "X2"});
  LiftedCurve curve;
  curve.level = 1;
  curve.free_var = 0;
  curve.center = 1;
  curve.cap = 2;
  curve.lambda = {BigInt(1)};
  curve.q = BiPolyZ(std::vector<UniPoly<BigInt>>{ipoly({0, 0, -1}),
                                                 UniPoly<BigInt>::constant(BigInt(1))});
  curve.params = {LiftedCurve::CurveParam{UniPoly<BigInt>::constant(BigInt(1)),
                                          BiPolyZ(std::vector<UniPoly<BigInt>>{
                                              UniPoly<BigInt>(), ipoly({1})})}};
  GeometricResolution res = intersect_with_hypersurface(curve, sys, 1, {BigInt(1)}, 0, 25);
  CHECK(res.degree() == 2);
  Slp spec = specialize_free(sys, 2, 2, {});
  CHECK(validate_resolution(res, spec).ok());
}

TEST_CASE("clean_fiber takes primitive parts and is idempotent") {
  GeometricResolution r;
  r.lambda = {BigInt(1)};
  r.q = ipoly({2, 2, 2});
  r.params = {Parametrization{BigInt(3), ipoly({0, 3})}};
  GeometricResolution c = clean_fiber(r);
  CHECK(c.q == ipoly({1, 1, 1}));
  CHECK(c.params[0].rho == 1);
  CHECK(c.params[0].v == ipoly({0, 1}));
  CHECK(clean_fiber(c) == c);

  std::mt19937_64 rng(89);
  for (int i = 0; i < 20; ++i) {
    GeometricResolution s = c;
    long k = oracles::rand_int(rng, 2, 50);
    s.q = s.q.map_coeffs<BigInt>([&](const BigInt& x) { return BigInt(k * x); });
    long m = oracles::rand_int(rng, 2, 50);
    s.params[0].rho *= m;
    s.params[0].v = s.params[0].v.map_coeffs<BigInt>(
        [&](const BigInt& x) { return BigInt(m * x); });
    CHECK(clean_fiber(s) == c);
  }
}

TEST_CASE("lifting point screening") {
  Slp sys = parse_system({"X2^2-X1", "X2-3"}, {"X1", "X2"});
  LiftedCurve curve;
  curve.level = 1;
  curve.free_var = 0;
  curve.center = 1;
  curve.cap = 2;
  curve.lambda = {BigInt(1)};
  curve.q = BiPolyZ(std::vector<UniPoly<BigInt>>{ipoly({0, -1}), UniPoly<BigInt>(),
                                                 UniPoly<BigInt>::constant(BigInt(1))});
  curve.params = {LiftedCurve::CurveParam{UniPoly<BigInt>::constant(BigInt(1)),
                                          BiPolyZ(std::vector<UniPoly<BigInt>>{
                                              UniPoly<BigInt>(), ipoly({1})})}};
  CHECK_FALSE(lifting_point_valid(curve, sys, 1, {BigInt(9)}, BigInt(9)));
  CHECK(lifting_point_valid(curve, sys, 1, {BigInt(1)}, BigInt(1)));
  CHECK_FALSE(lifting_point_valid(curve, sys, 1, {BigInt(0)}, BigInt(0)));  // disc = 0

  LiftingData data = choose_lifting_data(curve, sys, 1, {BigInt(1)}, {{BigInt(1)}}, 0, 10);
  CHECK(data.lambda.size() == 2);
  CHECK(data.point == std::vector<BigInt>{BigInt(1)});
}

TEST_CASE("consistency: stated instances") {
  SolveOptions opts;
  ConsistencyVerdict v5 = decide_consistency(oracles::problem2_system(2, BigInt(5)), opts);
  CHECK_FALSE(v5.consistent);
  CHECK(v5.det != 0);

  ConsistencyVerdict v3 = decide_consistency(oracles::problem2_system(2, BigInt(3)), opts);
  CHECK(v3.consistent);
  CHECK(v3.det == 0);
  REQUIRE(v3.kernel.has_value());
  CHECK(resolves_points(*v3.kernel, {{BigRat(1), BigRat(1)}}));

  Slp small = parse_system({"X1^2-X1", "X1-2"}, {"X1"});
  ConsistencyVerdict vs = decide_consistency(small, opts);
  CHECK_FALSE(vs.consistent);
  CHECK(vs.det == 2);
}

TEST_CASE("consistency matches brute force on small boolean systems") {
  for (int n = 1; n <= 3; ++n) {
    Slp base = oracles::boolean_system(n);
    SolveResult solved = solve_system(base);
    for (long k = 0; k <= (1L << (n + 1)); ++k) {
      Slp sys = oracles::problem2_system(n, BigInt(k));
      ConsistencyVerdict v = decide_consistency_with(solved.resolution, sys, n);
      CHECK(v.consistent == (k <= (1L << n) - 1));
    }
  }
}

TEST_CASE("homothety determinant routes agree") {
  Slp base = oracles::boolean_system(3);
  SolveResult solved = solve_system(base);
  for (long k : {0L, 3L, 9L, 11L}) {
    Slp sys = oracles::problem2_system(3, BigInt(k));
    BigRat matrix_route, res_route;
    {
      MultiplicationTable t = mult_table_from_resolution(solved.resolution);
      matrix_route = mat_det(sys.eval(t.mx).at(3));
    }
    {
      ResidueView view = residue_view(solved.resolution);
      auto b = sys.eval(view.coords).at(3).value();
      res_route = b.zero_p() ? BigRat(0) : resultant(view.ctx->modulus, b);
    }
    CHECK(matrix_route == res_route);
    CHECK(homothety_det(solved.resolution, sys, 3) == matrix_route);
  }
}

TEST_CASE("reduce_system") {
  Slp sys = parse_system({"X1^2-X1", "X2-1"}, {"X1", "X2"});
  CHECK(reduce_system(sys, 2, 0) == sys);  // s <= n+1: identity

  Slp over = parse_system({"X1", "X1-1", "X1+1"}, {"X1"});
  Slp red = reduce_system(over, 1, 0);
  CHECK(red.num_outputs() == 2);
  // the empty variety stays empty: the combinations share no root
  auto d = oracles::dense(red);
  UniPoly<BigRat> g1 = to_unipoly(d[0]), g2 = to_unipoly(d[1]);
  CHECK(poly_gcd(g1, g2).degree() == 0);

  Slp many = parse_system({"X1^2-X1", "X2-1", "X1+X2", "X1-X2"}, {"X1", "X2"});
  Slp red2 = reduce_system(many, 2, 0);
  CHECK(red2.num_outputs() == 3);
}

TEST_CASE("identity coordinate change is kept when it already works") {
  // bound variable X2 carries the full degree of f1: no change needed
  Slp sys = parse_system({"X2^2-X2", "X1-X2"}, {"X1", "X2"});
  SolveResult r = solve_system(sys);
  CHECK(r.attempts == 1);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(r.change[i][j] == (i == j ? 1 : 0));
  CHECK(validate_resolution(r.resolution, sys).ok());
}

TEST_CASE("determinism under a fixed seed") {
  Slp sys = oracles::chain_system(3);
  SolveOptions opts;
  opts.seed = 12345;
  SolveResult a = solve_system(sys, opts);
  SolveResult b = solve_system(sys, opts);
  CHECK(resolution_to_json(a.resolution) == resolution_to_json(b.resolution));
  CHECK(a.attempts == b.attempts);
}

TEST_CASE("random dense quadratics solve and validate") {
  std::mt19937_64 rng(97);
  int solved_count = 0;
  for (int trial = 0; trial < 12 && solved_count < 6; ++trial) {
    auto poly_str = [&](int n) {
      std::string s;
      bool first = true;
      for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
          long c = oracles::rand_int(rng, -3, 3);
          if (!c) continue;
          if (!first) s += "+";
          s += "(" + std::to_string(c) + ")*X" + std::to_string(i) + "*X" +
               std::to_string(j);
          first = false;
        }
      for (int i = 1; i <= n; ++i) {
        long c = oracles::rand_int(rng, -3, 3);
        if (!c) continue;
        if (!first) s += "+";
        s += "(" + std::to_string(c) + ")*X" + std::to_string(i);
        first = false;
      }
      s += first ? "1" : "+(" + std::to_string(oracles::rand_int(rng, -3, 3)) + ")";
      return s;
    };
    int n = 2;
    std::vector<std::string> vars{"X1", "X2"}, eqs{poly_str(n), poly_str(n)};
    Slp sys;
    try {
      sys = parse_system(eqs, vars);
      SolveOptions opts;
      opts.seed = (uint64_t)trial;
      SolveResult r = solve_system(sys, opts);
      CHECK(validate_resolution(r.resolution, sys).ok());
      ++solved_count;
    } catch (const SolveError&) {
      continue;  // filtered: degenerate instance
    }
  }
  CHECK(solved_count >= 4);
}

TEST_CASE("chain systems up to n = 4 validate end to end") {
  for (int n = 2; n <= 4; ++n) {
    Slp sys = oracles::chain_system(n);
    SolveResult r = solve_system(sys);
    CHECK(r.resolution.degree() == 2);
    CHECK(validate_resolution(r.resolution, sys).ok());
    // every per-level fiber validates against its specialized subsystem
    auto inv = invert_integer_matrix(r.change);
    Slp tsys = substitute_linear(sys, inv);
    for (const auto& fib : r.fibers) {
      Slp spec = specialize_free(tsys, fib.level, fib.level, fib.point);
      CHECK(validate_resolution(fib.res, spec).ok());
    }
  }
}
