#include <doctest.h>

#include <random>

#include "geosolve/duality.hpp"
#include "geosolve/solver.hpp"
#include "oracles.hpp"

using namespace geosolve;

namespace {

UniPoly<BigInt> ipoly(std::initializer_list<long> coeffs) {
  std::vector<BigInt> c;
  for (long v : coeffs) c.emplace_back(v);
  return UniPoly<BigInt>(std::move(c));
}

GeometricResolution res_x2_minus_1() {  // Q[X]/(X^2 - 1)
  GeometricResolution r;
  r.lambda = {BigInt(1)};
  r.q = ipoly({-1, 0, 1});
  r.params = {Parametrization{BigInt(1), ipoly({0, 1})}};
  return r;
}

GeometricResolution res_boolean1() {  // Q[X]/(X^2 - X)
  GeometricResolution r;
  r.lambda = {BigInt(1)};
  r.q = ipoly({0, -1, 1});
  r.params = {Parametrization{BigInt(1), ipoly({0, 1})}};
  return r;
}

GeometricResolution chain2_resolution() {
  GeometricResolution r;
  r.lambda = {BigInt(1), BigInt(0)};
  r.q = ipoly({1, 1, 1});
  r.params = {Parametrization{BigInt(1), ipoly({0, 1})},
              Parametrization{BigInt(1), ipoly({-1, -1})}};
  return r;
}

// equality in the quotient algebra through multiplication operators
bool equal_in_algebra(const MultiPoly& a, const MultiPoly& b,
                      const MultiplicationTable& t) {
  return a.eval(t.mx) == b.eval(t.mx);
}

}  // namespace

TEST_CASE("pseudo-jacobian: stated values and the diagonal property") {
  Slp f1 = parse_poly("X1^2", {"X1"});
  auto d1 = oracles::dense(pseudo_jacobian(f1));
  MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  CHECK(d1[0] == x + y);

  Slp f2 = parse_poly("X1^2-X1", {"X1"});
  auto d2 = oracles::dense(pseudo_jacobian(f2));
  CHECK(d2[0] == x + y - MultiPoly::constant(2, BigRat(1)));

  Slp f3 = parse_system({"X1^2", "X2^2"}, {"X1", "X2"});
  auto d3 = oracles::dense(pseudo_jacobian(f3));
  MultiPoly x1 = MultiPoly::variable(4, 0), x2 = MultiPoly::variable(4, 1);
  MultiPoly y1 = MultiPoly::variable(4, 2), y2 = MultiPoly::variable(4, 3);
  CHECK(d3[0] == (x1 + y1) * (x2 + y2));

  // diagonal restriction equals the Jacobian determinant
  std::mt19937_64 rng(101);
  for (int i = 0; i < 30; ++i) {
    int nv = (int)oracles::rand_int(rng, 1, 2);
    std::vector<Slp> parts;
    SlpBuilder b(nv);
    std::vector<LinComb> outs;
    for (int j = 0; j < nv; ++j) {
      Slp s = oracles::random_slp(rng, nv, 3, 2, 3);
      std::vector<LinComb> ident;
      for (int v = 0; v < nv; ++v) ident.push_back(b.input(v));
      outs.push_back(append_substituted(b, s, ident)[0]);
    }
    Slp sys = b.take(std::move(outs));
    MultiPoly delta = oracles::dense(pseudo_jacobian(sys))[0];
    // substitute Y := X
    MultiPoly diag(nv);
    for (const auto& [e, c] : delta.terms()) {
      MultiPoly::Exp ee(nv, 0);
      for (int v = 0; v < nv; ++v) ee[v] = e[v] + e[nv + v];
      MultiPoly t(nv);
      t.set(ee, c);
      diag = diag + t;
    }
    // Jacobian determinant, dense
    auto fs = oracles::dense(sys);
    Matrix<MultiPoly> jac = Matrix<MultiPoly>::zeros(nv, MultiPoly(nv));
    for (int r = 0; r < nv; ++r)
      for (int c2 = 0; c2 < nv; ++c2) jac.at(r, c2) = fs[r].derivative(c2);
    CHECK(diag == oracles::leibniz_det(jac));
  }
}

TEST_CASE("lift_residue: univariate examples") {
  GeometricResolution r = res_x2_minus_1();
  Slp sys = parse_system({"X1^2-1"}, {"X1"});
  MultiplicationTable t = mult_table_from_resolution(r);

  MultiPoly g1 = lift_residue(parse_poly("X1^3", {"X1"}), t, sys);
  CHECK(g1 == MultiPoly::variable(1, 0));  // X^3 == X mod X^2-1

  MultiPoly gid = lift_residue(parse_poly("1", {"X1"}), t, sys);
  CHECK(gid == MultiPoly::constant(1, BigRat(1)));
}

TEST_CASE("lift_residue on the chain algebra") {
  GeometricResolution r = chain2_resolution();
  Slp sys = oracles::chain_system(2);
  MultiplicationTable t = mult_table_from_resolution(r);
  MultiPoly g1 = lift_residue(parse_poly("X2^2", {"X1", "X2"}), t, sys);
  CHECK(g1.total_degree() <= 2);  // n(d-1) = 2
  CHECK(equal_in_algebra(g1, MultiPoly::variable(2, 0), t));  // X2^2 == X1 in B
}

TEST_CASE("trace formula equals the normal form on random residues") {
  std::mt19937_64 rng(103);
  GeometricResolution rs[2] = {res_boolean1(), chain2_resolution()};
  Slp sys_list[2] = {parse_system({"X1^2-X1"}, {"X1"}), oracles::chain_system(2)};
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int which = (int)oracles::rand_int(rng, 0, 1);
    const GeometricResolution& r = rs[which];
    const Slp& sys = sys_list[which];
    const int n = r.nvars();
    MultiplicationTable t = mult_table_from_resolution(r);
    Slp g = oracles::random_slp(rng, n, 4, 2, 4);
    MultiPoly lifted = lift_residue(g, t, sys);
    CHECK(lifted.total_degree() <= n * (2 - 1));
    // equality in B against the direct image of g
    Matrix<BigRat> img = g.eval(t.mx)[0];
    CHECK(lifted.eval(t.mx) == img);
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("division step") {
  GeometricResolution r = res_boolean1();
  Slp sys = parse_system({"X1^2-X1"}, {"X1"});
  TraceData td = make_trace_data(r, sys);

  Slp f = parse_poly("X1-2", {"X1"});
  Slp one = parse_poly("1", {"X1"});
  DivisionStep d = division_step(f, one, td);
  CHECK(d.theta == -2);
  MultiPoly expect(1);
  expect.set({0}, BigRat(1));
  expect.set({1}, BigRat(1));
  CHECK(d.q == expect);  // X + 1; (X+1)(X-2) = -2 mod X^2-X

  // division by 1: theta^-1 q == g in B
  Slp g = parse_poly("X1+5", {"X1"});
  DivisionStep d2 = division_step(one, g, td);
  MultiPoly scaled = scalar_mul(d2.q, 1 / d2.theta);
  CHECK(scaled.eval(td.table.mx) == g.eval(td.table.mx)[0]);

  // zero divisor
  Slp zf = parse_poly("X1", {"X1"});
  CHECK_THROWS_WITH_AS(division_step(zf, one, td), "f is a zero-divisor in B",
                       std::domain_error);
}

TEST_CASE("bezout witness: stated example and identity") {
  GeometricResolution r = res_boolean1();
  Slp sys = parse_system({"X1^2-X1", "X1-2"}, {"X1"});
  BezoutWitness w = bezout_witness(r, sys, 1);
  CHECK(w.a == 2);
  MultiPoly expect(1);
  expect.set({0}, BigRat(-1));
  expect.set({1}, BigRat(-1));
  CHECK(w.g == expect);  // -X - 1

  // a - g f2 lies in (f1): its residue representative is zero, and at any
  // integer point it is a multiple of f1's value
  MultiPoly gf = w.g * (MultiPoly::variable(1, 0) - MultiPoly::constant(1, BigRat(2)));
  MultiPoly diff = MultiPoly::constant(1, BigRat(w.a)) - gf;
  MultiplicationTable t = mult_table_from_resolution(r);
  CHECK(is_zero(diff.eval(t.mx)));
  Slp base = parse_system({"X1^2-X1"}, {"X1"});
  TraceData td = make_trace_data(r, base);
  Slp diff_slp = parse_system({"2-(-X1-1)*(X1-2)"}, {"X1"});
  CHECK(lift_residue(diff_slp, td).zero_p());
  std::mt19937_64 rng(107);
  for (int i = 0; i < 10; ++i) {
    BigRat x(oracles::rand_int(rng, -20, 20));
    BigRat fx = x * x - x;
    BigRat dx = diff.eval(std::vector<BigRat>{x});
    if (fx != 0) CHECK(rat_is_integer(dx / fx));
  }
}

TEST_CASE("bezout witness on the chain system") {
  GeometricResolution r = chain2_resolution();
  Slp sys = parse_system({"X1^2+X1+1", "X2-X1^2", "X1"}, {"X1", "X2"});
  BezoutWitness w = bezout_witness(r, sys, 2);
  CHECK(w.a != 0);
  MultiplicationTable t = mult_table_from_resolution(r);
  Matrix<BigRat> gm = w.g.eval(t.mx);
  Matrix<BigRat> fm = sys.eval(t.mx)[2];
  CHECK(mat_mul(gm, fm) == Matrix<BigRat>::scalar(t.dim, BigRat(w.a)));
}

TEST_CASE("bezout witness refuses consistent systems") {
  GeometricResolution r = res_boolean1();
  Slp sys = parse_system({"X1^2-X1", "X1"}, {"X1"});
  CHECK_THROWS_WITH_AS(bezout_witness(r, sys, 1),
                       "system is consistent - no witness exists", std::domain_error);
}

TEST_CASE("witness JSON round-trip") {
  GeometricResolution r = res_boolean1();
  Slp sys = parse_system({"X1^2-X1", "X1-2"}, {"X1"});
  BezoutWitness w = bezout_witness(r, sys, 1);
  BezoutWitness back = witness_from_json(witness_to_json(w));
  CHECK(back.a == w.a);
  CHECK(back.g == w.g);
}
