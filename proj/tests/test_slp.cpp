#include <doctest.h>

#include <random>

#include "geosolve/matrix.hpp"
#include "geosolve/series.hpp"
#include "geosolve/slp.hpp"
#include "oracles.hpp"

using namespace geosolve;

namespace {

MultiPoly dense1(const Slp& s, size_t idx = 0) { return oracles::dense(s)[idx]; }

}  // namespace

TEST_CASE("parser: sizes, powers, gate reuse") {
  Slp a = parse_poly("X1^2+X1+1", {"X1"});
  CHECK(a.size_muls() == 1);
  CHECK(a.depth() == 1);

  Slp p8 = parse_poly("X1^8", {"X1"});
  CHECK(p8.depth() == 3);  // three squarings
  CHECK(p8.size_muls() == 3);

  Slp joint = parse_system({"X1^2+X1+1", "X2-X1^2"}, {"X1", "X2"});
  CHECK(joint.size_muls() == 1);  // the square gate is shared
  CHECK(dense1(joint, 1) == MultiPoly::variable(2, 1) -
                                MultiPoly::variable(2, 0) * MultiPoly::variable(2, 0));
}

TEST_CASE("parser: errors carry positions") {
  CHECK_THROWS_AS(parse_poly("X1++", {"X1"}), ParseError);
  CHECK_THROWS_AS(parse_poly("X1*)", {"X1"}), ParseError);
  try {
    parse_poly("X1+Y7", {"X1"});
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position == 3);
    CHECK(std::string(e.what()).find("Y7") != std::string::npos);
  }
}

TEST_CASE("evaluation over numbers, matrices and series") {
  Slp f = parse_poly("X1^2+X1+1", {"X1"});
  CHECK(f.eval(std::vector<BigRat>{BigRat(2)})[0] == 7);

  // at the companion matrix of its own minimal polynomial: zero
  UniPoly<BigRat> q(std::vector<BigRat>{BigRat(1), BigRat(1), BigRat(1)});
  Matrix<BigRat> m = companion(make_monic(q));
  CHECK(is_zero(f.eval(std::vector<Matrix<BigRat>>{m})[0]));

  // X2 - X1^2 at (x, x^2) as truncated series
  Slp g = parse_poly("X2-X1^2", {"X1", "X2"});
  TruncSeries x = TruncSeries::coordinate({BigInt(0)}, 4, 0);
  CHECK(is_zero(g.eval(std::vector<TruncSeries>{x, x * x})[0]));
}

TEST_CASE("evaluation agrees with dense expansion") {
  std::mt19937_64 rng(31);
  // exhaustive-style small programs plus random ones
  for (int i = 0; i < 500; ++i) {
    int nv = (int)oracles::rand_int(rng, 1, 3);
    Slp s = oracles::random_slp(rng, nv, 6, 3, 3);
    MultiPoly d = dense1(s);
    for (int t = 0; t < 3; ++t) {
      std::vector<BigRat> pt;
      for (int v = 0; v < nv; ++v) pt.emplace_back(oracles::rand_int(rng, -5, 5));
      CHECK(s.eval(pt)[0] == d.eval(pt));
    }
  }
}

TEST_CASE("derive_all: examples, sizes, oracle") {
  Slp f = parse_poly("X1^2+X1+1", {"X1"});
  Slp df = derive_all(f);
  CHECK(df.eval(std::vector<BigRat>{BigRat(2)})[1] == 5);

  Slp g = parse_poly("X2-X1^2", {"X1", "X2"});
  Slp dg = derive_all(g);
  auto dd = oracles::dense(dg);
  CHECK(dd[1] == scalar_mul(MultiPoly::variable(2, 0), BigRat(-2)));
  CHECK(dd[2] == MultiPoly::constant(2, BigRat(1)));

  Slp h = parse_poly("X1*X2", {"X1", "X2"});
  auto dh = oracles::dense(derive_all(h));
  CHECK(dh[1] == MultiPoly::variable(2, 1));
  CHECK(dh[2] == MultiPoly::variable(2, 0));

  std::mt19937_64 rng(37);
  for (int i = 0; i < 100; ++i) {
    int nv = (int)oracles::rand_int(rng, 1, 3);
    Slp s = oracles::random_slp(rng, nv, 5, 3, 3);
    Slp ds = derive_all(s);
    CHECK(ds.size_muls() <= (2 * nv + 1) * std::max<long>(s.size_muls(), 1));
    CHECK(ds.depth() <= s.depth() + 1);
    auto expanded = oracles::dense(ds);
    MultiPoly orig = dense1(s);
    CHECK(expanded[0] == orig);
    for (int j = 0; j < nv; ++j) CHECK(expanded[1 + j] == orig.derivative(j));
  }
}

TEST_CASE("homogeneous components") {
  auto comps = oracles::dense(homogeneous_components(parse_poly("X1^2+X1+1", {"X1"}), 2));
  CHECK(comps[0] == MultiPoly::constant(1, BigRat(1)));
  CHECK(comps[1] == MultiPoly::variable(1, 0));
  CHECK(comps[2] == MultiPoly::variable(1, 0) * MultiPoly::variable(1, 0));

  auto c2 = oracles::dense(homogeneous_components(parse_poly("X1*X2+3", {"X1", "X2"}), 2));
  CHECK(c2[0] == MultiPoly::constant(2, BigRat(3)));
  CHECK(c2[1].zero_p());
  CHECK(c2[2] == MultiPoly::variable(2, 0) * MultiPoly::variable(2, 1));

  auto c3 = oracles::dense(homogeneous_components(parse_poly("(X1+1)^2", {"X1"}), 2));
  MultiPoly x = MultiPoly::variable(1, 0);
  CHECK(c3[0] == MultiPoly::constant(1, BigRat(1)));
  CHECK(c3[1] == scalar_mul(x, BigRat(2)));
  CHECK(c3[2] == x * x);

  std::mt19937_64 rng(41);
  for (int i = 0; i < 60; ++i) {
    int nv = (int)oracles::rand_int(rng, 1, 2);
    Slp s = oracles::random_slp(rng, nv, 4, 2, 3);
    MultiPoly d = dense1(s);
    int D = std::max(d.total_degree(), 0);
    auto comps_r = oracles::dense(homogeneous_components(s, D));
    MultiPoly sum(nv);
    for (const auto& c : comps_r) sum = sum + c;
    CHECK(sum == d);  // components sum back to the original
  }
}

TEST_CASE("divided differences: telescoping identities") {
  auto l1 = oracles::dense(divided_differences(parse_poly("X1^2", {"X1"})));
  MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  CHECK(l1[0] == x + y);

  auto l2 = oracles::dense(divided_differences(parse_poly("X1^2-X1", {"X1"})));
  CHECK(l2[0] == x + y - MultiPoly::constant(2, BigRat(1)));

  // n = 2, f = X1 X2: check the telescoping identity exactly
  std::mt19937_64 rng(43);
  for (int i = 0; i < 60; ++i) {
    int nv = (i == 0) ? 2 : (int)oracles::rand_int(rng, 1, 3);
    Slp s = (i == 0) ? parse_poly("X1*X2", {"X1", "X2"})
                     : oracles::random_slp(rng, nv, 4, 2, 3);
    Slp dd = divided_differences(s);
    auto ls = oracles::dense(dd);  // over 2 nv variables
    MultiPoly f = dense1(s);
    // f(Y) - f(X) rebuilt over the doubled variable list
    MultiPoly fx(2 * nv), fy(2 * nv);
    for (const auto& [e, c] : f.terms()) {
      MultiPoly::Exp ex(2 * nv, 0), ey(2 * nv, 0);
      for (int v = 0; v < nv; ++v) {
        ex[v] = e[v];
        ey[nv + v] = e[v];
      }
      fx.set(ex, c);
      fy.set(ey, c);
    }
    MultiPoly rhs(2 * nv);
    for (int k = 0; k < nv; ++k) {
      MultiPoly diff = MultiPoly::variable(2 * nv, nv + k) - MultiPoly::variable(2 * nv, k);
      rhs = rhs + ls[k] * diff;
    }
    CHECK(rhs == fy - fx);
  }
}

TEST_CASE("questor parameters") {
  auto a = questor_params(4, 2);
  CHECK(a.u == 150);
  CHECK(a.t == 384);
  auto b = questor_params(1, 1);
  CHECK(b.u == 18);
  CHECK(b.t == 6);
  auto c = questor_params(2, 0);
  CHECK(c.u == 0);
  CHECK(c.t == 0);
}

TEST_CASE("probabilistic zero test") {
  Slp z = parse_poly("X1-X1", {"X1"});
  CHECK(probabilistic_zero_test(z, 10, BigInt(100), 1));
  Slp nz = parse_poly("X1^2+X1+1", {"X1"});
  CHECK_FALSE(probabilistic_zero_test(nz, 10, BigInt(100), 1));
  Slp prod = parse_poly("(X1-1)*(X2-1)", {"X1", "X2"});
  CHECK_FALSE(probabilistic_zero_test(prod, 384, BigInt(150), 1));
}

TEST_CASE("metrics and bound formulas") {
  Slp s1 = parse_poly("X1^2", {"X1"});
  SlpBounds b1 = degree_height_value_bounds(s1, Height(BigRat(1)));
  CHECK(b1.deg_bound == 2);  // depth 1

  // L=2, depth=1, h=1, H=2 -> value bound (2^2-1)(2+1) = 9
  SlpBuilder bb(1);
  LinComb g1 = bb.mul(lc_add(bb.input(0), bb.one()), bb.input(0));
  LinComb g2 = bb.mul(lc_add(bb.input(0), bb.constant(BigRat(2))), bb.input(0));
  Slp s2 = bb.take({lc_add(g1, g2)});
  REQUIRE(s2.size_muls() == 2);
  REQUIRE(s2.depth() == 1);
  REQUIRE(s2.param_height().v == 1);
  SlpBounds b2 = degree_height_value_bounds(s2, Height(BigRat(2)));
  CHECK(b2.value_bound == 9);

  // L=1, depth=0? a depth-0 program has no products; use L=1 depth=0 via metrics
  // of a constant-only program is degenerate, so check the formula value at
  // L=1, depth=0, h=1 directly through a crafted program
  SlpBuilder cb(1);
  Slp s3 = cb.take({cb.constant(BigRat(2))});
  REQUIRE(s3.size_muls() == 0);
  SlpBounds b3 = degree_height_value_bounds(s3, Height(BigRat(1)));
  CHECK(b3.ht_bound == 1);  // (2-1)(1+0)
}

TEST_CASE("degree and coefficient-height bounds hold on random programs") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 100; ++i) {
    int nv = (int)oracles::rand_int(rng, 1, 3);
    Slp s = oracles::random_slp(rng, nv, 8, 3, 16);
    SlpMetrics m = metrics(s);
    MultiPoly d = dense1(s);
    BigInt degb = int_pow(BigInt(2), (unsigned long)m.depth);
    CHECK(BigInt(std::max(d.total_degree(), 0)) <= degb);
    BigRat factor = BigRat(int_pow(BigInt(2), (unsigned long)m.depth + 1) - 1);
    BigRat logL = m.L >= 2 ? log2_upper(BigInt(m.L)) : BigRat(0);
    BigRat htb = factor * (m.h.v + logL);
    CHECK(height(d).v <= htb);
  }
}

TEST_CASE("JSON round-trip preserves the program") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 30; ++i) {
    Slp s = oracles::random_slp(rng, 2, 5, 3, 9);
    Slp back = slp_from_json(slp_to_json(s));
    CHECK(back == s);
  }
}
