#include "geosolve/duality.hpp"

#include <json.hpp>

namespace geosolve {

using nlohmann::json;

Slp pseudo_jacobian(const Slp& system) {
  const int n = system.nvars;
  Slp dd = divided_differences(take_outputs(system, n));
  SlpBuilder b(2 * n);
  std::vector<LinComb> ident;
  for (int i = 0; i < 2 * n; ++i) ident.push_back(b.input(i));
  auto outs = append_substituted(b, dd, ident);
  Matrix<SlpExpr> m = Matrix<SlpExpr>::zeros(n, SlpExpr{&b, {}});
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m.at(j, k) = SlpExpr{&b, outs[j * n + k]};
  UniPoly<SlpExpr> chi = berkowitz_charpoly(m);
  SlpExpr det = chi.coeff_or_zero(0, SlpExpr{&b, {}});
  if (n % 2) det = -det;
  return b.take({det.lc});
}

namespace {

// n x n Jacobian evaluated entrywise at commuting matrices, then collapsed
// to a single matrix via the division-free determinant.
Matrix<BigRat> jacobian_at_matrices(const Slp& system, const MultiplicationTable& table) {
  const int n = system.nvars;
  Slp da = derive_all(take_outputs(system, n));
  auto vals = da.eval(table.mx);
  Matrix<Matrix<BigRat>> jac =
      Matrix<Matrix<BigRat>>::zeros(n, Matrix<BigRat>::zeros(table.dim, BigRat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) jac.at(i, j) = vals[n + i * n + j];
  return mat_det(jac);
}

Matrix<MultiPoly> delta_at_matrices(const Slp& system, const MultiplicationTable& table) {
  const int n = system.nvars;
  const int D = table.dim;
  Slp dd = divided_differences(take_outputs(system, n));
  // first block: the multiplication matrices as constant polynomials;
  // second block: X_j times the identity
  std::vector<Matrix<MultiPoly>> point;
  MultiPoly zero(n);
  for (int j = 0; j < n; ++j) {
    Matrix<MultiPoly> m = Matrix<MultiPoly>::zeros(D, zero);
    for (int r = 0; r < D; ++r)
      for (int c = 0; c < D; ++c)
        m.at(r, c) = MultiPoly::constant(n, table.mx[j].at(r, c));
    point.push_back(std::move(m));
  }
  for (int j = 0; j < n; ++j) {
    Matrix<MultiPoly> m = Matrix<MultiPoly>::zeros(D, zero);
    MultiPoly xj = MultiPoly::variable(n, j);
    for (int r = 0; r < D; ++r) m.at(r, r) = xj;
    point.push_back(std::move(m));
  }
  auto lvals = dd.eval(point);
  Matrix<Matrix<MultiPoly>> m =
      Matrix<Matrix<MultiPoly>>::zeros(n, Matrix<MultiPoly>::zeros(D, zero));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m.at(j, k) = lvals[j * n + k];
  return mat_det(m);
}

Matrix<MultiPoly> to_poly_matrix(const Matrix<BigRat>& m, int nvars) {
  Matrix<MultiPoly> r = Matrix<MultiPoly>::zeros(m.n, MultiPoly(nvars));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r.at(i, j) = MultiPoly::constant(nvars, m.at(i, j));
  return r;
}

}  // namespace

TraceData make_trace_data(const GeometricResolution& res, const Slp& system) {
  TraceData td;
  td.table = mult_table_from_resolution(res);
  td.j1 = jacobian_at_matrices(system, td.table);
  auto [adj, det] = adjoint_det(td.j1);
  if (det == 0) throw std::domain_error("system not smooth");
  td.j1_adj = std::move(adj);
  td.j1_det = std::move(det);
  td.delta1 = delta_at_matrices(system, td.table);
  return td;
}

MultiPoly lift_residue(const Slp& g, const TraceData& td) {
  const int n = (int)td.table.mx.size();
  Matrix<BigRat> g1 = g.eval(td.table.mx).at(0);
  Matrix<MultiPoly> prod =
      mat_mul(to_poly_matrix(mat_mul(td.j1_adj, g1), n), td.delta1);
  MultiPoly tr = prod.trace();
  return scalar_mul(tr, 1 / td.j1_det);
}

MultiPoly lift_residue(const Slp& g, const MultiplicationTable& table, const Slp& system) {
  TraceData td;
  td.table = table;
  td.j1 = jacobian_at_matrices(system, table);
  auto [adj, det] = adjoint_det(td.j1);
  if (det == 0) throw std::domain_error("system not smooth");
  td.j1_adj = std::move(adj);
  td.j1_det = std::move(det);
  td.delta1 = delta_at_matrices(system, table);
  return lift_residue(g, td);
}

DivisionStep division_step(const Slp& f, const Slp& g, const TraceData& td) {
  const int n = (int)td.table.mx.size();
  Matrix<BigRat> f1 = f.eval(td.table.mx).at(0);
  auto [f2, fdet] = adjoint_det(f1);
  if (fdet == 0) throw std::domain_error("f is a zero-divisor in B");
  Matrix<BigRat> g1 = g.eval(td.table.mx).at(0);

  DivisionStep out;
  out.theta = fdet * td.j1_det;
  Matrix<BigRat> scalar_part = mat_mul(mat_mul(f2, td.j1_adj), g1);
  out.q = mat_mul(to_poly_matrix(scalar_part, n), td.delta1).trace();

  // exact verification of q f == theta g in the algebra
  Matrix<BigRat> qm = out.q.eval(td.table.mx);
  if (!(mat_mul(qm, f1) == scalar_mul(g1, out.theta)))
    throw std::domain_error("f does not divide g in B");
  return out;
}

BezoutWitness bezout_witness(const GeometricResolution& res, const Slp& system,
                             size_t last_output) {
  const int n = res.nvars();
  TraceData td = make_trace_data(res, take_outputs(system, n));
  Matrix<BigRat> flast = system.eval(td.table.mx).at(last_output);
  if (mat_det(flast) == 0)
    throw std::domain_error("system is consistent - no witness exists");

  SlpBuilder fb(n);
  std::vector<LinComb> ident;
  for (int i = 0; i < n; ++i) ident.push_back(fb.input(i));
  auto all = append_substituted(fb, system, ident);
  Slp f_only = fb.take({all.at(last_output)});

  SlpBuilder gb(n);
  Slp one_slp = gb.take({gb.one()});

  DivisionStep div = division_step(f_only, one_slp, td);

  // clear denominators of theta and q through powers of the leading
  // coefficient and the discriminant, folding any leftover integer in
  BigInt alpha = res.q.lc();
  BigInt rho = res.rho_product();
  BigInt need = div.theta.get_den();
  for (const auto& [e, c] : div.q.terms()) need = int_lcm(need, c.get_den());

  long N = 0, M = 0;
  BigInt rem = need;
  BigInt aa = int_abs(alpha);
  if (aa > 1) {
    while (int_gcd(rem, aa) > 1) {
      rem = int_divexact(rem, int_gcd(rem, aa));
      ++N;
    }
  }
  BigInt rr = int_abs(rho);
  if (rr > 1) {
    while (int_gcd(rem, rr) > 1) {
      rem = int_divexact(rem, int_gcd(rem, rr));
      ++M;
    }
  }
  BigRat mult = BigRat(int_pow(alpha, (unsigned long)N) * int_pow(rho, (unsigned long)M) * rem);

  BezoutWitness w;
  w.exp_alpha = N;
  w.exp_rho = M;
  BigRat a_rat = div.theta * mult;
  MultiPoly g_scaled = scalar_mul(div.q, mult);
  // simultaneous sign: make the integer positive
  if (a_rat < 0) {
    a_rat = -a_rat;
    g_scaled = -g_scaled;
  }
  w.a = to_int(a_rat);
  w.g = std::move(g_scaled);

  // membership certificate in matrix form
  Matrix<BigRat> gm = w.g.eval(td.table.mx);
  Matrix<BigRat> lhs = Matrix<BigRat>::scalar(td.table.dim, BigRat(w.a));
  if (!(mat_mul(gm, flast) == lhs))
    throw std::domain_error("witness identity failed");
  return w;
}

std::string witness_to_json(const BezoutWitness& w) {
  json j;
  j["a"] = w.a.get_str();
  json g = json::object();
  for (const auto& [e, c] : w.g.terms()) {
    std::string key;
    for (size_t i = 0; i < e.size(); ++i) {
      if (i) key += ",";
      key += std::to_string(e[i]);
    }
    g[key] = rat_to_string(c);
  }
  j["g"] = g;
  j["N"] = w.exp_alpha;
  j["M"] = w.exp_rho;
  return j.dump();
}

BezoutWitness witness_from_json(const std::string& text) {
  json j = json::parse(text);
  BezoutWitness w;
  w.a = BigInt(j.at("a").get<std::string>());
  w.exp_alpha = j.value("N", 0L);
  w.exp_rho = j.value("M", 0L);
  int nvars = 1;
  for (auto& [key, value] : j.at("g").items()) {
    int commas = (int)std::count(key.begin(), key.end(), ',');
    nvars = std::max(nvars, commas + 1);
  }
  MultiPoly g(nvars);
  for (auto& [key, value] : j.at("g").items()) {
    MultiPoly::Exp e;
    size_t pos = 0;
    while (pos <= key.size()) {
      size_t next = key.find(',', pos);
      if (next == std::string::npos) next = key.size();
      e.push_back((uint32_t)std::stoul(key.substr(pos, next - pos)));
      pos = next + 1;
    }
    e.resize(nvars, 0);
    g.set(e, rat_from_string(value.get<std::string>()));
  }
  w.g = std::move(g);
  return w;
}

}  // namespace geosolve
