#include "geosolve/newton.hpp"

#include <algorithm>

#include "geosolve/qring.hpp"

namespace geosolve {

BiPolyQ to_rat_bipoly(const BiPolyZ& p) {
  return p.map_coeffs<UniPoly<BigRat>>(
      [](const UniPoly<BigInt>& c) { return to_rat_poly(c); });
}

BiPolyZ primitive_of_rat_bipoly(const BiPolyQ& p) {
  if (p.zero_p()) throw std::domain_error("zero has no content");
  BigInt den(1);
  for (const auto& c : p.coeffs()) den = int_lcm(den, den_lcm(c));
  BiPolyZ scaled = p.map_coeffs<UniPoly<BigInt>>([&](const UniPoly<BigRat>& c) {
    return to_int_poly(scalar_mul(c, BigRat(den)));
  });
  BigInt content = int_content(scaled);
  BiPolyZ out = scaled.map_coeffs<UniPoly<BigInt>>([&](const UniPoly<BigInt>& c) {
    return c.map_coeffs<BigInt>([&](const BigInt& x) { return int_divexact(x, content); });
  });
  if (out.lc().lc() < 0)
    out = out.map_coeffs<UniPoly<BigInt>>([](const UniPoly<BigInt>& c) { return -c; });
  return out;
}

// ---------- Newton numerator/denominator program ----------

NewtonIterate newton_numerators(const Slp& system, int k) {
  system.check_canonical();
  const int n = system.nvars;
  if ((int)system.num_outputs() < n)
    throw std::invalid_argument("newton_numerators: system must have n outputs");
  if (k < 0) throw std::invalid_argument("negative iteration count");

  if (k == 0) {
    SlpBuilder rb(n);
    std::vector<LinComb> outs;
    for (int i = 0; i < n; ++i) outs.push_back(rb.input(i));
    outs.push_back(rb.one());
    return {0, rb.take(std::move(outs))};
  }

  // Numerators of one Newton step: g_i = J x_i - sum_j Adj(DF)_ij f_j, with
  // everything recorded as gates via the expression ring.
  Slp da = derive_all(take_outputs(system, n));
  SlpBuilder b(n);
  std::vector<LinComb> ident;
  for (int i = 0; i < n; ++i) ident.push_back(b.input(i));
  std::vector<LinComb> vals = append_substituted(b, da, ident);

  Matrix<SlpExpr> jac = Matrix<SlpExpr>::zeros(n, SlpExpr{&b, {}});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) jac.at(i, j) = SlpExpr{&b, vals[n + i * n + j]};
  auto [adj, jdet] = adjoint_det(jac);

  std::vector<LinComb> outs;
  for (int i = 0; i < n; ++i) {
    SlpExpr xi{&b, b.input(i)};
    SlpExpr gi = jdet * xi;
    for (int j = 0; j < n; ++j) gi = gi - adj.at(i, j) * SlpExpr{&b, vals[j]};
    outs.push_back(gi.lc);
  }
  outs.push_back(jdet.lc);
  Slp core = b.take(std::move(outs));  // g_1..g_n, J

  // Homogenize to common degree nu = n*d + 1 with a fresh variable X0 (last
  // input slot), then iterate by substitution.
  SlpMetrics m = metrics(system);
  BigInt dbound = int_pow(BigInt(2), (unsigned long)m.depth);
  if (!dbound.fits_slong_p()) throw std::invalid_argument("degree bound overflow");
  long d = dbound.get_si();
  int nu = (int)(n * d + 1);

  Slp comps = homogeneous_components(core, nu);
  SlpBuilder gb(n + 1);
  std::vector<LinComb> gsub;
  for (int i = 0; i < n; ++i) gsub.push_back(gb.input(i));
  std::vector<LinComb> comp_out = append_substituted(gb, comps, gsub);
  LinComb x0 = gb.input(n);
  std::vector<LinComb> gh;
  for (int out = 0; out <= n; ++out) {
    LinComb acc;
    for (int deg = 0; deg <= nu; ++deg) {
      const LinComb& c = comp_out[out * (nu + 1) + deg];
      if (c.empty()) continue;
      acc = lc_add(acc, gb.mul(c, gb.pow(x0, (unsigned long)(nu - deg))));
    }
    gh.push_back(std::move(acc));
  }
  Slp GH = gb.take(std::move(gh));  // G_1..G_n, H over (X_1..X_n, X0)

  SlpBuilder rb(n);
  std::vector<LinComb> g;
  for (int i = 0; i < n; ++i) g.push_back(rb.input(i));
  LinComb h = rb.one();
  for (int t = 0; t < k; ++t) {
    std::vector<LinComb> subst = g;
    subst.push_back(h);
    std::vector<LinComb> next = append_substituted(rb, GH, subst);
    for (int i = 0; i < n; ++i) g[i] = next[i];
    h = next[n];
  }
  std::vector<LinComb> final_outs = g;
  final_outs.push_back(h);
  return {k, rb.take(std::move(final_outs))};
}

// ---------- curve lifting ----------

namespace {

using SMat = Matrix<TruncSeries>;

int ceil_log2(int v) {
  int k = 0;
  while ((1 << k) < v) ++k;
  return k;
}

// Evaluation point for the full variable list: free variables become scalar
// series (the lifted one carries the series variable), bound variables are
// the current Newton matrices.
std::vector<SMat> eval_point(int n, int level, const std::vector<BigInt>& point,
                             int free_var, const std::vector<BigInt>& center,
                             int cap, const std::vector<SMat>& bound) {
  const int nfree = n - level;
  const int dim = bound[0].n;
  std::vector<SMat> pt;
  pt.reserve(n);
  for (int v = 0; v < nfree; ++v) {
    TruncSeries s = (v == free_var)
                        ? TruncSeries::coordinate(center, cap, 0)
                        : TruncSeries::constant(center, cap, BigRat(point[v]));
    pt.push_back(SMat::scalar(dim, s));
  }
  for (int j = 0; j < level; ++j) pt.push_back(bound[j]);
  return pt;
}

SMat widen(const SMat& m, int cap) {
  SMat r = m;
  for (auto& e : r.a) e = e.truncated(cap);
  return r;
}

bool all_zero(const std::vector<SMat>& v) {
  for (const auto& m : v)
    if (!is_zero(m)) return false;
  return true;
}

}  // namespace

LiftedCurve lift_fiber_traced(const Slp& system, int level,
                              const std::vector<BigInt>& point, int free_var,
                              const GeometricResolution& fiber, int delta_bound,
                              NewtonTrace* trace) {
  system.check_canonical();
  const int n = system.nvars;
  if (level < 1 || level > n) throw std::invalid_argument("bad level");
  if ((int)point.size() != n - level) throw std::invalid_argument("bad point length");
  if (free_var < 0 || free_var >= n - level)
    throw std::invalid_argument("free variable out of range");
  if (delta_bound < 1) throw std::invalid_argument("delta_bound must be positive");
  if (fiber.nvars() != level) throw std::invalid_argument("fiber arity mismatch");

  const int D = fiber.degree();
  const std::vector<BigInt> center{point[free_var]};
  const int cap = delta_bound;
  const int kappa = 1 + ceil_log2(std::max(delta_bound, 1));

  MultiplicationTable table = mult_table_from_resolution(fiber);
  Slp da = derive_all(take_outputs(system, level));

  // Newton state: one D x D series matrix per bound variable.
  std::vector<SMat> state;
  state.reserve(level);
  for (int j = 0; j < level; ++j) {
    SMat m = SMat::zeros(D, TruncSeries(center, cap));
    for (int r = 0; r < D; ++r)
      for (int c = 0; c < D; ++c)
        m.at(r, c) = TruncSeries::constant(center, cap, table.mx[j].at(r, c));
    state.push_back(std::move(m));
  }
  if (trace) trace->iterates.push_back(state);

  auto residuals = [&](const std::vector<SMat>& st, int at_cap) {
    std::vector<SMat> wide;
    wide.reserve(level);
    for (const auto& m : st) wide.push_back(widen(m, at_cap));
    auto pt = eval_point(n, level, point, free_var, center, at_cap, wide);
    return da.eval(pt);
  };

  for (int t = 1; t <= kappa; ++t) {
    {
      auto full = residuals(state, cap);
      std::vector<SMat> f(full.begin(), full.begin() + level);
      if (all_zero(f)) break;
    }
    int step_cap = std::min((1 << t) - 1, cap);
    for (auto& m : state) m = widen(m, step_cap);
    auto vals = residuals(state, step_cap);

    Matrix<SMat> df = Matrix<SMat>::zeros(level, state[0]);
    for (int r = 0; r < level; ++r)
      for (int c = 0; c < level; ++c)
        df.at(r, c) = vals[level + r * n + (n - level + c)];
    auto [adj_df, w] = adjoint_det(df);   // w: D x D series matrix
    auto [adj_w, wdet] = adjoint_det(w);  // wdet: series
    if (wdet.constant_term() == 0)
      throw LiftError(LiftError::Kind::NotSmooth, "fiber not smooth / bad lifting point");
    TruncSeries winv = series_invert(wdet);
    SMat w_inverse = adj_w;
    for (auto& e : w_inverse.a) e = e * winv;

    for (int j = 0; j < level; ++j) {
      SMat delta = SMat::zeros(D, state[0].sample());
      for (int c2 = 0; c2 < level; ++c2)
        delta = delta + mat_mul(adj_df.at(j, c2), vals[c2]);
      state[j] = state[j] - mat_mul(delta, w_inverse);
    }
    if (trace) trace->iterates.push_back(state);
  }

  {
    auto full = residuals(state, cap);
    for (int j = 0; j < level; ++j)
      if (!is_zero(full[j]))
        throw LiftError(LiftError::Kind::NotSmooth,
                        "newton iteration failed to converge");
  }

  // Primitive-element matrix and its characteristic polynomial over the
  // series ring.
  SMat big_m = SMat::zeros(D, state[0].sample());
  for (int j = 0; j < level; ++j)
    big_m = big_m + scalar_mul(state[j], BigRat(fiber.lambda[j]));
  UniPoly<TruncSeries> chi = berkowitz_charpoly(big_m);

  BiPolyQ q_rat;
  {
    const TruncSeries like(center, cap);
    std::vector<UniPoly<BigRat>> coeffs;
    for (int kk = 0; kk < D; ++kk)
      coeffs.push_back(poly_from_series_1v(chi.coeff_or_zero(kk, like)));
    coeffs.push_back(UniPoly<BigRat>::constant(BigRat(1)));
    q_rat = BiPolyQ(std::move(coeffs));
  }

  // Coordinate numerators w_j(X, T) = sum_k Tr(N_j B_k) T^k with B_k the
  // Horner tails of Adj(T Id - M).
  std::vector<BiPolyQ> wpoly(level);
  {
    std::vector<SMat> tails(D, SMat::identity(D, big_m.sample()));
    for (int kk = D - 1; kk >= 1; --kk) {
      SMat prev = mat_mul(big_m, tails[kk]);
      TruncSeries ak = chi.coeff_or_zero(kk, big_m.sample());
      for (int r = 0; r < D; ++r) prev.at(r, r) = prev.at(r, r) + ak;
      tails[kk - 1] = std::move(prev);
    }
    for (int j = 0; j < level; ++j) {
      std::vector<UniPoly<BigRat>> coeffs;
      for (int kk = 0; kk < D; ++kk) {
        TruncSeries tr = mat_mul(state[j], tails[kk]).trace();
        coeffs.push_back(poly_from_series_1v(tr));
      }
      wpoly[j] = BiPolyQ(std::move(coeffs));
    }
  }

  // Convert the derivative-denominator form X_j = w_j / q_T' into the
  // rho_j(X) X_j = v_j(X, T) shape: one modular inverse of q_T' shared by
  // all coordinates, denominators cleared per coordinate.
  auto embed = [](const UniPoly<BigRat>& c) { return RatFunc(c); };
  UniPoly<RatFunc> qf = q_rat.map_coeffs<RatFunc>(embed);
  UniPoly<RatFunc> dq = qf.derivative();
  UniPoly<RatFunc> inv;
  try {
    inv = inverse_mod(dq, qf);
  } catch (const std::exception&) {
    throw LiftError(LiftError::Kind::NotPrimitive, "primitive element failure");
  }

  LiftedCurve curve;
  curve.level = level;
  curve.free_var = free_var;
  curve.center = point[free_var];
  curve.cap = cap;
  curve.lambda = fiber.lambda;
  curve.q = primitive_of_rat_bipoly(q_rat);
  for (int j = 0; j < level; ++j) {
    UniPoly<RatFunc> vr = poly_mod(wpoly[j].map_coeffs<RatFunc>(embed) * inv, qf);
    UniPoly<BigRat> den = UniPoly<BigRat>::constant(BigRat(1));
    for (const auto& c : vr.coeffs()) {
      if (c.zero_p()) continue;
      UniPoly<BigRat> g = poly_gcd(den, c.den);
      den = divrem(den * c.den, g).first;
    }
    BiPolyQ v_clear = vr.map_coeffs<UniPoly<BigRat>>([&](const RatFunc& c) {
      if (c.zero_p()) return UniPoly<BigRat>();
      return c.num * exact_div(den, c.den);
    });
    // integer clearing of the pair (den, v_clear), then joint primitive part
    BigInt m = den_lcm(den);
    for (const auto& c : v_clear.coeffs()) m = int_lcm(m, den_lcm(c));
    UniPoly<BigInt> rho_int = to_int_poly(scalar_mul(den, BigRat(m)));
    BiPolyZ v_int = v_clear.map_coeffs<UniPoly<BigInt>>(
        [&](const UniPoly<BigRat>& c) { return to_int_poly(scalar_mul(c, BigRat(m))); });
    BigInt g = int_content(rho_int);
    if (!v_int.zero_p()) g = int_gcd(g, int_content(v_int));
    LiftedCurve::CurveParam cp;
    cp.rho = rho_int.map_coeffs<BigInt>([&](const BigInt& x) { return int_divexact(x, g); });
    cp.v = v_int.map_coeffs<UniPoly<BigInt>>([&](const UniPoly<BigInt>& c) {
      return c.map_coeffs<BigInt>([&](const BigInt& x) { return int_divexact(x, g); });
    });
    if (cp.rho.lc() < 0) {
      cp.rho = -cp.rho;
      cp.v = cp.v.map_coeffs<UniPoly<BigInt>>([](const UniPoly<BigInt>& c) { return -c; });
    }
    curve.params.push_back(std::move(cp));
  }
  return curve;
}

LiftedCurve lift_fiber(const Slp& system, int level, const std::vector<BigInt>& point,
                       int free_var, const GeometricResolution& fiber, int delta_bound) {
  return lift_fiber_traced(system, level, point, free_var, fiber, delta_bound, nullptr);
}

// ---------- curve checks ----------

CurveView curve_view(const LiftedCurve& curve) {
  BiPolyQ qr = to_rat_bipoly(curve.q);
  if (qr.lc().degree() != 0)
    throw std::domain_error("curve minimal polynomial not monic in T");
  auto ctx = std::make_shared<QuotCtx<RatFunc>>();
  ctx->modulus = make_monic(qr.map_coeffs<RatFunc>(
      [](const UniPoly<BigRat>& c) { return RatFunc(c); }));
  CurveView view;
  view.ctx = ctx;
  for (const auto& p : curve.params) {
    RatFunc rho_inv = ring_div(RatFunc::constant(BigRat(1)), RatFunc(to_rat_poly(p.rho)));
    UniPoly<RatFunc> v = to_rat_bipoly(p.v).map_coeffs<RatFunc>(
        [&](const UniPoly<BigRat>& c) { return RatFunc(c) * rho_inv; });
    view.coords.emplace_back(ctx, std::move(v));
  }
  return view;
}

bool validate_curve(const LiftedCurve& curve, const Slp& system,
                    const std::vector<BigInt>& point) {
  const int n = system.nvars;
  const int level = curve.level;
  CurveView view;
  try {
    view = curve_view(curve);
  } catch (const std::exception&) {
    return false;
  }
  std::vector<QuotElt<RatFunc>> pt;
  for (int v = 0; v < n - level; ++v) {
    RatFunc val = (v == curve.free_var) ? RatFunc::variable()
                                        : RatFunc::constant(BigRat(point[v]));
    pt.emplace_back(view.ctx, UniPoly<RatFunc>::constant(val));
  }
  for (int j = 0; j < level; ++j) pt.push_back(view.coords[j]);
  std::vector<QuotElt<RatFunc>> vals;
  try {
    vals = take_outputs(system, level).eval(pt);
  } catch (const std::exception&) {
    return false;
  }
  for (const auto& v : vals)
    if (!v.zero_p()) return false;
  // primitive-element consistency on the curve
  QuotElt<RatFunc> acc = zero_like(QuotElt<RatFunc>::generator(view.ctx));
  for (int j = 0; j < level; ++j)
    acc = acc + scalar_mul(view.coords[j], BigRat(curve.lambda[j]));
  return acc == QuotElt<RatFunc>::generator(view.ctx);
}

bool curve_specializes_to_fiber(const LiftedCurve& curve, const GeometricResolution& fiber) {
  BigRat x0(curve.center);
  UniPoly<BigRat> q_at = to_rat_bipoly(curve.q).map_coeffs<BigRat>(
      [&](const UniPoly<BigRat>& c) { return c.eval(x0); });
  if (q_at.zero_p() || q_at.degree() != fiber.degree()) return false;
  if (!(primitive_of_rat(q_at) == primitive_part(fiber.q))) return false;
  auto ctx = std::make_shared<QuotCtx<BigRat>>();
  ctx->modulus = make_monic(q_at);
  for (size_t j = 0; j < curve.params.size(); ++j) {
    BigRat rho_at = to_rat_poly(curve.params[j].rho).eval(x0);
    if (rho_at == 0) return false;
    UniPoly<BigRat> v_at = to_rat_bipoly(curve.params[j].v)
                               .map_coeffs<BigRat>([&](const UniPoly<BigRat>& c) {
                                 return c.eval(x0);
                               });
    QuotElt<BigRat> lhs(ctx, scalar_mul(v_at, 1 / rho_at));
    QuotElt<BigRat> rhs(ctx, scalar_mul(to_rat_poly(fiber.params[j].v),
                                        make_rat(BigInt(1), fiber.params[j].rho)));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

}  // namespace geosolve
