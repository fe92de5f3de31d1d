#include "geosolve/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <random>

#include "geosolve/multipoly.hpp"
#include "geosolve/qring.hpp"

namespace geosolve {

namespace {

std::mt19937_64 rng_for(uint64_t seed, uint64_t attempt, uint64_t tag) {
  std::seed_seq seq{(uint32_t)(seed & 0xffffffffu), (uint32_t)(seed >> 32),
                    (uint32_t)attempt, (uint32_t)tag};
  return std::mt19937_64(seq);
}

long draw_range(std::mt19937_64& rng, long low, long high) {
  return low + (long)(rng() % (unsigned long)(high - low + 1));
}

// Reduced primitive parametrization pair from a rational coordinate value.
Parametrization make_param(const UniPoly<BigRat>& value) {
  Parametrization p;
  if (value.zero_p()) {
    p.rho = 1;
    return p;
  }
  auto [ipoly, den] = clear_denominators(value);
  BigInt g = int_gcd(int_content(ipoly), den);
  p.rho = int_divexact(den, g);
  p.v = ipoly.map_coeffs<BigInt>([&](const BigInt& c) { return int_divexact(c, g); });
  return p;
}

std::vector<std::vector<BigInt>> identity_change(int n) {
  std::vector<std::vector<BigInt>> A(n, std::vector<BigInt>(n, BigInt(0)));
  for (int i = 0; i < n; ++i) A[i][i] = 1;
  return A;
}

std::vector<std::vector<BigInt>> reversal_change(int n) {
  std::vector<std::vector<BigInt>> A(n, std::vector<BigInt>(n, BigInt(0)));
  for (int i = 0; i < n; ++i) A[i][n - 1 - i] = 1;
  return A;
}

std::vector<std::vector<BigInt>> random_change(int n, long bound, std::mt19937_64& rng) {
  std::vector<std::vector<BigInt>> A(n, std::vector<BigInt>(n));
  for (auto& row : A)
    for (auto& e : row) e = BigInt(draw_range(rng, -bound, bound));
  return A;
}

BigRat det_of(const std::vector<std::vector<BigInt>>& A) {
  int n = (int)A.size();
  Matrix<BigRat> m = Matrix<BigRat>::zeros(n, BigRat(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = BigRat(A[i][j]);
  return mat_det(m);
}

// Evaluates a T-major bivariate polynomial at quotient-ring elements.
QuotElt<BigRat> bipoly_at(const BiPolyQ& p, const QuotElt<BigRat>& x,
                          const QuotElt<BigRat>& t) {
  QuotElt<BigRat> acc = zero_like(x);
  for (int k = p.degree(); k >= 0; --k) {
    const UniPoly<BigRat>& ck = p.coeffs()[k];
    QuotElt<BigRat> c = ck.eval_in(x, [&](const BigRat& v) {
      return scalar_mul(one_like(x), v);
    });
    acc = acc * t + c;
  }
  return acc;
}

// T := S - alpha X applied to a T-major bivariate polynomial; the result is
// X-major with coefficients in S, ready for elimination of X.
UniPoly<UniPoly<BigRat>> subst_shift(const BiPolyQ& p, const BigInt& alpha) {
  using XP = UniPoly<UniPoly<BigRat>>;  // outer X, inner S
  XP x_major;                           // accumulates the image
  XP xvar = XP::variable(UniPoly<BigRat>::constant(BigRat(1)));
  XP svar = XP::constant(UniPoly<BigRat>::variable(BigRat(1)));
  XP tsub = svar - xvar.mul_coeff(UniPoly<BigRat>::constant(BigRat(alpha)));
  for (int k = p.degree(); k >= 0; --k) {
    // embed c_k(X) as an X-major polynomial with constant S-coefficients
    const UniPoly<BigRat>& ck = p.coeffs()[k];
    std::vector<UniPoly<BigRat>> emb;
    for (const auto& c : ck.coeffs()) emb.push_back(UniPoly<BigRat>::constant(c));
    x_major = x_major * tsub + XP(std::move(emb));
  }
  return x_major;
}

}  // namespace

std::vector<std::vector<BigRat>> invert_integer_matrix(
    const std::vector<std::vector<BigInt>>& A) {
  int n = (int)A.size();
  Matrix<BigRat> m = Matrix<BigRat>::zeros(n, BigRat(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = BigRat(A[i][j]);
  auto [adj, det] = adjoint_det(m);
  if (det == 0) throw SolveError("coordinate change not invertible");
  std::vector<std::vector<BigRat>> inv(n, std::vector<BigRat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = adj.at(i, j) / det;
  return inv;
}

Slp substitute_linear(const Slp& s, const std::vector<std::vector<BigRat>>& subst) {
  SlpBuilder b(s.nvars);
  std::vector<LinComb> in(s.nvars);
  for (int i = 0; i < s.nvars; ++i) {
    LinComb lc;
    for (int v = 0; v < s.nvars; ++v)
      if (subst[i][v] != 0) lc.push_back({subst[i][v], (uint32_t)v});
    in[i] = std::move(lc);
  }
  return b.take(append_substituted(b, s, in));
}

Slp specialize_free(const Slp& s, size_t num_outputs, int level,
                    const std::vector<BigInt>& point) {
  const int n = s.nvars;
  const int nfree = n - level;
  if ((int)point.size() != nfree) throw std::invalid_argument("specialize_free: bad point");
  SlpBuilder b(level);
  std::vector<LinComb> in(n);
  for (int v = 0; v < nfree; ++v) in[v] = b.constant(BigRat(point[v]));
  for (int j = 0; j < level; ++j) in[nfree + j] = b.input(j);
  auto outs = append_substituted(b, s, in);
  outs.resize(std::min(num_outputs, outs.size()));
  return b.take(std::move(outs));
}

GeometricResolution transform_resolution(const GeometricResolution& res,
                                         const std::vector<std::vector<BigInt>>& A) {
  const int n = res.nvars();
  auto inv = invert_integer_matrix(A);
  std::vector<UniPoly<BigRat>> yv;
  for (const auto& p : res.params)
    yv.push_back(scalar_mul(to_rat_poly(p.v), make_rat(BigInt(1), p.rho)));
  GeometricResolution out;
  out.q = primitive_part(res.q);
  for (int i = 0; i < n; ++i) {
    UniPoly<BigRat> xi;
    for (int v = 0; v < n; ++v)
      if (inv[i][v] != 0) xi = xi + scalar_mul(yv[v], inv[i][v]);
    out.params.push_back(make_param(xi));
  }
  out.lambda.assign(n, BigInt(0));
  for (int i = 0; i < n; ++i)
    for (int v = 0; v < n; ++v) out.lambda[i] += A[v][i] * res.lambda[v];
  return out;
}

GeometricResolution clean_fiber(const GeometricResolution& res) {
  GeometricResolution out;
  out.lambda = res.lambda;
  out.q = primitive_part(res.q);
  for (const auto& p : res.params) {
    UniPoly<BigRat> value = scalar_mul(to_rat_poly(p.v), make_rat(BigInt(1), p.rho));
    out.params.push_back(make_param(value));
  }
  return out;
}

Slp jacobian_det_slp(const Slp& system, int level) {
  if (system.nvars != level)
    throw std::invalid_argument("jacobian_det_slp expects a specialized square system");
  Slp da = derive_all(take_outputs(system, level));
  SlpBuilder b(level);
  std::vector<LinComb> ident;
  for (int i = 0; i < level; ++i) ident.push_back(b.input(i));
  auto vals = append_substituted(b, da, ident);
  Matrix<SlpExpr> jac = Matrix<SlpExpr>::zeros(level, SlpExpr{&b, {}});
  for (int i = 0; i < level; ++i)
    for (int j = 0; j < level; ++j)
      jac.at(i, j) = SlpExpr{&b, vals[level + i * level + j]};
  UniPoly<SlpExpr> chi = berkowitz_charpoly(jac);
  SlpExpr det = chi.coeff_or_zero(0, SlpExpr{&b, {}});
  if (level % 2) det = -det;
  return b.take({det.lc});
}

Slp reduce_system(const Slp& system, long degree_bound, uint64_t seed) {
  const int n = system.nvars;
  const long s = (long)system.num_outputs();
  if (s <= n + 1) return system;
  auto rng = rng_for(seed, 0, 7);
  long bound = std::max<long>(1, n * degree_bound);
  bound = std::max<long>(bound * bound, 17);  // floor keeps tiny systems generic
  SlpBuilder b(n);
  std::vector<LinComb> ident;
  for (int i = 0; i < n; ++i) ident.push_back(b.input(i));
  auto outs = append_substituted(b, system, ident);
  std::vector<LinComb> combined;
  for (int k = 0; k < n + 1; ++k) {
    LinComb acc;
    for (long j = 0; j < s; ++j)
      acc = lc_add(acc, lc_scale(outs[j], BigRat(BigInt(draw_range(rng, 1, bound)))));
    combined.push_back(std::move(acc));
  }
  return b.take(std::move(combined));
}

BiPolyQ restrict_to_curve(const LiftedCurve& curve, const Slp& system, size_t output,
                          const std::vector<BigInt>& point) {
  CurveView view = curve_view(curve);
  const int n = system.nvars;
  const int level = curve.level;
  std::vector<QuotElt<RatFunc>> pt;
  for (int v = 0; v < n - level; ++v) {
    RatFunc val = (v == curve.free_var) ? RatFunc::variable()
                                        : RatFunc::constant(BigRat(point[v]));
    pt.emplace_back(view.ctx, UniPoly<RatFunc>::constant(val));
  }
  for (int j = 0; j < level; ++j) pt.push_back(view.coords[j]);
  auto vals = system.eval(pt);
  if (output >= vals.size()) throw std::invalid_argument("restrict_to_curve: bad output");
  const UniPoly<RatFunc>& res = vals[output].value();
  if (res.zero_p()) return BiPolyQ();
  UniPoly<BigRat> den = UniPoly<BigRat>::constant(BigRat(1));
  for (const auto& c : res.coeffs()) {
    if (c.zero_p()) continue;
    UniPoly<BigRat> g = poly_gcd(den, c.den);
    den = divrem(den * c.den, g).first;
  }
  return res.map_coeffs<UniPoly<BigRat>>([&](const RatFunc& c) {
    if (c.zero_p()) return UniPoly<BigRat>();
    return c.num * exact_div(den, c.den);
  });
}

// ---------- intersection ----------

namespace {

struct IntersectCandidate {
  UniPoly<BigRat> modulus;                 // monic squarefree q(S)
  std::vector<UniPoly<BigRat>> params;     // coordinate images mod modulus
};

// Denominator-free image of an X-major bivariate polynomial; the overall
// scalar is irrelevant to the elimination uses below.
UniPoly<UniPoly<BigInt>> clear_xmajor(const UniPoly<UniPoly<BigRat>>& p) {
  BigInt den(1);
  for (const auto& c : p.coeffs()) den = int_lcm(den, den_lcm(c));
  return p.map_coeffs<UniPoly<BigInt>>([&](const UniPoly<BigRat>& c) {
    return to_int_poly(scalar_mul(c, BigRat(den)));
  });
}

// Single alpha attempt; throws SolveError on structural failures, returns
// nullopt when a fresh alpha should be tried.
std::optional<IntersectCandidate> try_alpha(const BiPolyQ& q_rat, const BiPolyQ& a_biq,
                                            const LiftedCurve& curve, const BigInt& alpha,
                                            int next_level) {
  using XP = UniPoly<UniPoly<BigRat>>;
  using XPZ = UniPoly<UniPoly<BigInt>>;
  XP r1 = subst_shift(q_rat, alpha);
  XP r2 = subst_shift(a_biq, alpha);
  // integer pseudo-remainder sequences; the chain elements differ from the
  // rational ones only by scalars, which cancel in every use below
  XPZ r1z = clear_xmajor(r1);
  XPZ r2z = clear_xmajor(r2);
  UniPoly<BigInt> r = resultant(r1z, r2z);
  if (r.zero_p())
    throw SolveError("not a regular sequence", next_level);
  UniPoly<BigRat> modulus = squarefree_part(to_rat_poly(r));
  if (modulus.degree() == 0)
    throw SolveError("empty fiber at level " + std::to_string(next_level), next_level);

  auto chain = subresultant_prs(r1z, r2z);
  const XPZ* lin = nullptr;
  for (const auto& c : chain)
    if (c.degree() == 1) lin = &c;
  if (!lin) return std::nullopt;
  UniPoly<BigRat> c1 = to_rat_poly(lin->coeffs()[1]);
  UniPoly<BigRat> c0 = to_rat_poly(lin->coeffs()[0]);

  UniPoly<BigRat> xq;
  try {
    UniPoly<BigRat> inv = inverse_mod(poly_mod(c1, modulus), modulus);
    xq = poly_mod(-c0 * inv, modulus);
  } catch (const std::exception&) {
    // c1 shares a factor with the modulus: alpha does not separate the
    // intersection points above some value; stripping would silently drop
    // variety points, so give the caller a fresh alpha instead.
    return std::nullopt;
  }

  auto ctx = std::make_shared<QuotCtx<BigRat>>();
  ctx->modulus = modulus;
  QuotElt<BigRat> x_elt(ctx, xq);
  UniPoly<BigRat> svar = UniPoly<BigRat>::variable(BigRat(1));
  QuotElt<BigRat> t_elt(ctx, poly_mod(svar - scalar_mul(xq, BigRat(alpha)), modulus));

  IntersectCandidate cand;
  cand.modulus = modulus;
  cand.params.push_back(x_elt.value());
  for (const auto& p : curve.params) {
    QuotElt<BigRat> den = to_rat_poly(p.rho).eval_in(x_elt, [&](const BigRat& v) {
      return scalar_mul(one_like(x_elt), v);
    });
    UniPoly<BigRat> den_inv;
    try {
      den_inv = inverse_mod(den.value(), modulus);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    QuotElt<BigRat> num = bipoly_at(to_rat_bipoly(p.v), x_elt, t_elt);
    cand.params.push_back((num * QuotElt<BigRat>(ctx, den_inv)).value());
  }
  return cand;
}

}  // namespace

GeometricResolution intersect_with_hypersurface(const LiftedCurve& curve, const Slp& system,
                                                size_t next_output,
                                                const std::vector<BigInt>& point,
                                                uint64_t seed, int retries) {
  const int next_level = curve.level + 1;
  BiPolyQ q_rat = to_rat_bipoly(curve.q);
  BiPolyQ a_biq = restrict_to_curve(curve, system, next_output, point);
  if (a_biq.zero_p())
    throw SolveError("not a regular sequence", next_level);

  std::vector<BigInt> next_point;
  if (!point.empty()) next_point.assign(point.begin(), point.end() - 1);
  Slp spec = specialize_free(system, next_output + 1, next_level, next_point);

  auto rng = rng_for(seed, 0, 11);
  int dq = std::max(curve.q.degree(), 1);
  int da = std::max(a_biq.degree(), 1);
  long bound = std::max<long>(17, (long)(dq + da) * (dq + da) * 4);

  for (int attempt = 0; attempt <= retries; ++attempt) {
    BigInt alpha;
    if (attempt < 6) {
      static const long first[] = {1, -1, 2, -2, 3, -3};
      alpha = first[attempt];
    } else {
      long v = 0;
      while (v == 0) v = draw_range(rng, -bound, bound);
      alpha = v;
    }
    auto cand = try_alpha(q_rat, a_biq, curve, alpha, next_level);
    if (!cand) continue;

    // Cleaning: strip factors of the modulus carrying points that fail any
    // of the first next_level equations (extraneous components).
    auto reduce_params = [&](const UniPoly<BigRat>& modulus,
                             const std::vector<UniPoly<BigRat>>& params) {
      std::vector<UniPoly<BigRat>> out;
      for (const auto& p : params) out.push_back(poly_mod(p, modulus));
      return out;
    };
    UniPoly<BigRat> modulus = cand->modulus;
    std::vector<UniPoly<BigRat>> params = cand->params;
    for (int round = 0; round < 2; ++round) {
      auto ctx = std::make_shared<QuotCtx<BigRat>>();
      ctx->modulus = modulus;
      std::vector<QuotElt<BigRat>> pt;
      for (const auto& p : params) pt.emplace_back(ctx, p);
      auto vals = spec.eval(pt);
      UniPoly<BigRat> g = modulus;
      bool all_zero = true;
      for (const auto& v : vals) {
        if (v.zero_p()) continue;
        all_zero = false;
        g = poly_gcd(g, v.value());
      }
      if (all_zero) {
        GeometricResolution res;
        res.lambda.push_back(alpha);
        for (const auto& l : curve.lambda) res.lambda.push_back(l);
        res.q = primitive_of_rat(modulus);
        for (const auto& p : params) res.params.push_back(make_param(p));
        return res;
      }
      if (g.degree() == 0)
        throw SolveError("empty fiber at level " + std::to_string(next_level), next_level);
      modulus = g;
      params = reduce_params(modulus, params);
    }
    // residues survived cleaning: try another alpha
  }
  throw SolveError("could not find a separating primitive element at level " +
                       std::to_string(next_level),
                   next_level);
}

// ---------- lifting data ----------

bool lifting_point_valid(const LiftedCurve& curve, const Slp& system, size_t next_output,
                         const std::vector<BigInt>& point, const BigInt& candidate) {
  BigRat x0(candidate);
  auto at_x = [&](const BiPolyQ& p) {
    return p.map_coeffs<BigRat>([&](const UniPoly<BigRat>& c) { return c.eval(x0); });
  };
  UniPoly<BigRat> q_at = at_x(to_rat_bipoly(curve.q));
  if (q_at.degree() < 1) return false;
  if (resultant(q_at, q_at.derivative()) == 0) return false;  // discriminant vanishes
  for (const auto& p : curve.params)
    if (to_rat_poly(p.rho).eval(x0) == 0) return false;       // denominator vanishes
  BiPolyQ a_biq = restrict_to_curve(curve, system, next_output, point);
  if (a_biq.zero_p()) return false;
  UniPoly<BigRat> a_at = at_x(a_biq);
  if (a_at.zero_p()) return false;
  if (q_at.degree() > 0 && a_at.degree() >= 0 && resultant(q_at, a_at) == 0) return false;
  return true;
}

LiftingData choose_lifting_data(const LiftedCurve& curve, const Slp& system,
                                size_t next_output, const std::vector<BigInt>& point,
                                const std::vector<std::vector<BigInt>>& change,
                                uint64_t seed, int retries) {
  LiftingData data;
  data.change = change;
  data.alpha = 1;
  data.lambda.push_back(data.alpha);
  for (const auto& l : curve.lambda) data.lambda.push_back(l);
  // Accept the inherited base point when the exact test clears, otherwise
  // probe fresh coordinates for the curve's base variable.
  std::vector<BigInt> probe = point;
  if (lifting_point_valid(curve, system, next_output, point, probe[curve.free_var])) {
    data.point = probe;
    return data;
  }
  auto rng = rng_for(seed, 0, 13);
  for (int attempt = 0; attempt <= retries; ++attempt) {
    probe[curve.free_var] = BigInt(draw_range(rng, 1, 1 << 14));
    if (lifting_point_valid(curve, system, next_output, probe, probe[curve.free_var])) {
      data.point = probe;
      return data;
    }
  }
  throw SolveError("could not find lifting point");
}

// ---------- homothety determinant & consistency ----------

namespace {

BigRat homothety_det_matrix(const GeometricResolution& res, const Slp& system,
                            size_t output) {
  MultiplicationTable table = mult_table_from_resolution(res);
  auto vals = system.eval(table.mx);
  return mat_det(vals.at(output));
}

BigRat homothety_det_resultant(const GeometricResolution& res, const Slp& system,
                               size_t output) {
  ResidueView view = residue_view(res);
  auto vals = system.eval(view.coords);
  const UniPoly<BigRat>& b = vals.at(output).value();
  if (b.zero_p()) return BigRat(0);
  // clear both arguments to Z: Res(s q, t b) = s^deg(b) t^deg(q) Res(q, b),
  // and integer pseudo-remainders beat rational ones by a wide margin
  const UniPoly<BigRat>& qm = view.ctx->modulus;
  auto [qz, dq] = clear_denominators(qm);
  auto [bz, db] = clear_denominators(b);
  BigRat scale = rat_pow(make_rat(BigInt(1), dq), b.degree()) *
                 rat_pow(make_rat(BigInt(1), db), qm.degree());
  return scale * BigRat(resultant(qz, bz));
}

}  // namespace

BigRat homothety_det(const GeometricResolution& res, const Slp& system, size_t output) {
  if (res.degree() <= 24) return homothety_det_matrix(res, system, output);
  return homothety_det_resultant(res, system, output);
}

ConsistencyVerdict decide_consistency_with(const GeometricResolution& resolution,
                                           const Slp& system, size_t last_output) {
  ConsistencyVerdict v;
  v.det = homothety_det(resolution, system, last_output);
  v.consistent = v.det == 0;
  if (v.consistent) {
    ResidueView view = residue_view(resolution);
    const UniPoly<BigRat> b = system.eval(view.coords).at(last_output).value();
    UniPoly<BigRat> qk =
        b.zero_p() ? view.ctx->modulus : poly_gcd(view.ctx->modulus, b);
    if (qk.degree() >= 1) {
      GeometricResolution kernel;
      kernel.lambda = resolution.lambda;
      kernel.q = primitive_of_rat(qk);
      for (const auto& c : view.coords)
        kernel.params.push_back(make_param(poly_mod(c.value(), qk)));
      v.kernel = std::move(kernel);
    }
  }
  return v;
}

ConsistencyVerdict decide_consistency(const Slp& system, const SolveOptions& opts) {
  const int n = system.nvars;
  if ((int)system.num_outputs() < n + 1)
    throw std::invalid_argument("decide_consistency needs n+1 equations");
  SolveResult solved = solve_system(system, opts);
  return decide_consistency_with(solved.resolution, system, n);
}

// ---------- the incremental solve ----------

namespace {

struct DenseInfo {
  std::vector<long> degrees;
  long dmax = 1;
};

DenseInfo dense_degrees(const Slp& system, int n) {
  DenseInfo info;
  std::vector<MultiPoly> pt;
  for (int i = 0; i < n; ++i) pt.push_back(MultiPoly::variable(n, i));
  auto vals = take_outputs(system, n).eval(pt);
  for (const auto& f : vals) {
    long d = std::max(f.total_degree(), 0);
    info.degrees.push_back(d);
    info.dmax = std::max(info.dmax, d);
  }
  return info;
}

// Restriction of one output to the line through `point` in the last
// coordinate: a univariate polynomial.
UniPoly<BigRat> restrict_to_line(const Slp& system, size_t output,
                                 const std::vector<BigInt>& point) {
  const int n = system.nvars;
  std::vector<UniPoly<BigRat>> pt;
  for (int v = 0; v < n - 1; ++v)
    pt.push_back(UniPoly<BigRat>::constant(BigRat(point[v])));
  pt.push_back(UniPoly<BigRat>::variable(BigRat(1)));
  return system.eval(pt).at(output);
}

bool fiber_smooth(const GeometricResolution& res, const Slp& spec_system, int level) {
  Slp jd = jacobian_det_slp(spec_system, level);
  ResidueView view = residue_view(res);
  const UniPoly<BigRat> j = jd.eval(view.coords).at(0).value();
  if (j.zero_p()) return false;
  return poly_gcd(view.ctx->modulus, j).degree() == 0;
}

}  // namespace

SolveResult solve_system(const Slp& system, const SolveOptions& opts) {
  system.check_canonical();
  const int n = system.nvars;
  if ((int)system.num_outputs() < n)
    throw std::invalid_argument("solve_system needs n equations");
  DenseInfo dense = dense_degrees(system, n);

  // Bezout bounds per level for the curve reconstruction caps.
  std::vector<long> bez(n + 1, 1);
  for (int i = 1; i <= n; ++i)
    bez[i] = std::min<long>(bez[i - 1] * std::max<long>(dense.degrees[i - 1], 1), 1L << 24);

  std::string last_error = "solve failed";
  int last_level = 0;

  for (int attempt = 0; attempt <= opts.retries; ++attempt) {
    try {
      // coordinate change: identity, then reversal, then random
      std::vector<std::vector<BigInt>> A;
      if (attempt == 0)
        A = identity_change(n);
      else if (attempt == 1)
        A = reversal_change(n);
      else {
        auto rng = rng_for(opts.seed, attempt, 2);
        long b0 = std::max<long>(17, n * dense.dmax * std::min<long>(bez[n], 4096));
        A = random_change(n, std::min<long>(b0, 1 << 14), rng);
        if (det_of(A) == 0) continue;
      }
      auto inv = invert_integer_matrix(A);
      Slp tsys = substitute_linear(take_outputs(system, n), inv);

      // level 1: univariate fiber on a random line
      auto rng_pt = rng_for(opts.seed, attempt, 3);
      long pb = std::max<long>(17, n * dense.dmax * 16);
      pb = pb * pb;
      std::vector<BigInt> point;
      GeometricResolution fiber_res;
      bool base_ok = false;
      std::string base_err = "non-radical/non-smooth at level 1";
      for (int ptry = 0; ptry < 8 && !base_ok; ++ptry) {
        point.clear();
        for (int v = 0; v < n - 1; ++v)
          point.emplace_back(draw_range(rng_pt, 1, pb));
        UniPoly<BigRat> p = restrict_to_line(tsys, 0, point);
        if (p.degree() != dense.degrees[0]) {
          base_err = "could not reach Noether position at level 1";
          continue;  // leading coefficient vanished or direction degenerate
        }
        if (poly_gcd(p, p.derivative()).degree() != 0) {
          base_err = "non-radical/non-smooth at level 1";
          continue;
        }
        fiber_res.lambda = {BigInt(1)};
        fiber_res.q = primitive_of_rat(p);
        // X = T reduced mod q, so degree-1 fibers store the root value itself
        UniPoly<BigRat> tval = poly_mod(UniPoly<BigRat>::variable(BigRat(1)),
                                        make_monic(to_rat_poly(fiber_res.q)));
        fiber_res.params = {make_param(tval)};
        base_ok = true;
      }
      if (!base_ok) throw SolveError(base_err, 1);

      SolveResult result;
      result.change = A;
      result.fibers.push_back(LiftingFiber{1, A, point, fiber_res});
      result.levels.push_back(LevelReport{1, fiber_res.degree(),
                                          resolution_height(fiber_res), point,
                                          fiber_res.lambda, 0});

      for (int i = 1; i < n; ++i) {
        // adaptive truncation: double until the curve validates exactly
        long cap = std::max<long>(fiber_res.degree(), 1);
        LiftedCurve curve;
        bool lifted = false;
        while (true) {
          cap = std::min(cap, bez[i]);
          curve = lift_fiber(tsys, i, point, n - i - 1, fiber_res, (int)cap);
          if (curve_specializes_to_fiber(curve, fiber_res) &&
              validate_curve(curve, tsys, point)) {
            lifted = true;
            break;
          }
          if (cap >= bez[i]) break;
          cap *= 2;
        }
        if (!lifted) throw SolveError("curve reconstruction failed at level " +
                                          std::to_string(i), i);
        result.levels.back().curve_cap = (int)cap;

        GeometricResolution next =
            intersect_with_hypersurface(curve, tsys, i, point, opts.seed, opts.retries);
        next = clean_fiber(next);
        std::vector<BigInt> next_point(point.begin(), point.end() - 1);
        Slp spec = specialize_free(tsys, i + 1, i + 1, next_point);
        ValidationReport rep = validate_resolution(next, spec);
        if (!rep.ok())
          throw SolveError("invalid fiber at level " + std::to_string(i + 1) +
                               (rep.failures.empty() ? "" : ": " + rep.failures.front()),
                           i + 1);
        if (next.degree() <= opts.smooth_check_dim && !fiber_smooth(next, spec, i + 1))
          throw SolveError("non-radical/non-smooth at level " + std::to_string(i + 1),
                           i + 1);
        point = std::move(next_point);
        fiber_res = std::move(next);
        result.fibers.push_back(LiftingFiber{i + 1, A, point, fiber_res});
        result.levels.push_back(LevelReport{i + 1, fiber_res.degree(),
                                            resolution_height(fiber_res), point,
                                            fiber_res.lambda, 0});
      }

      result.resolution = transform_resolution(fiber_res, A);
      ValidationReport final_rep = validate_resolution(result.resolution,
                                                       take_outputs(system, n));
      if (!final_rep.ok())
        throw SolveError("final resolution failed validation" +
                         (final_rep.failures.empty() ? std::string()
                                                     : ": " + final_rep.failures.front()),
                         n);
      result.attempts = attempt + 1;
      return result;
    } catch (const SolveError& e) {
      last_error = e.what();
      last_level = e.level;
    } catch (const LiftError& e) {
      last_error = e.what();
    }
    if (std::getenv("GEOSOLVE_TRACE"))
      std::cerr << "attempt " << attempt << " failed: " << last_error << "\n";
  }
  throw SolveError(last_error + " (retry budget exhausted)", last_level);
}

}  // namespace geosolve
