#include "geosolve/fiber.hpp"

#include <json.hpp>

namespace geosolve {

using nlohmann::json;

MultiplicationTable mult_table_from_resolution(const GeometricResolution& res) {
  MultiplicationTable t;
  t.dim = res.degree();
  if (t.dim < 1) throw std::invalid_argument("resolution with constant minimal polynomial");
  UniPoly<BigRat> qm = make_monic(to_rat_poly(res.q));
  t.companion_monic = companion(qm);
  for (const auto& p : res.params) {
    UniPoly<BigRat> v = to_rat_poly(p.v);
    Matrix<BigRat> m = poly_at_matrix(v, t.companion_monic,
                                      [](const BigRat& c) { return c; });
    t.mx.push_back(scalar_mul(m, make_rat(BigInt(1), p.rho)));
  }
  return t;
}

ResidueView residue_view(const GeometricResolution& res) {
  ResidueView view;
  auto ctx = std::make_shared<QuotCtx<BigRat>>();
  ctx->modulus = make_monic(to_rat_poly(res.q));
  view.ctx = ctx;
  for (const auto& p : res.params) {
    UniPoly<BigRat> v = scalar_mul(to_rat_poly(p.v), make_rat(BigInt(1), p.rho));
    view.coords.emplace_back(view.ctx, std::move(v));
  }
  return view;
}

ValidationReport validate_resolution(const GeometricResolution& res, const Slp& system) {
  ValidationReport rep;
  const int n = res.nvars();
  if (res.q.zero_p() || res.q.degree() < 1) {
    rep.failures.push_back("minimal polynomial must have positive degree");
    return rep;
  }
  if ((int)res.params.size() != n) {
    rep.failures.push_back("parametrization count does not match variable count");
    return rep;
  }
  for (const auto& p : res.params)
    if (p.rho == 0) {
      rep.failures.push_back("zero rho");
      return rep;
    }

  UniPoly<BigRat> qr = to_rat_poly(res.q);

  // (a) squarefree
  rep.squarefree = poly_gcd(qr, qr.derivative()).degree() == 0;
  if (!rep.squarefree) rep.failures.push_back("q is not squarefree");

  // (b) parametrization degrees
  rep.degrees = true;
  for (const auto& p : res.params)
    if (p.v.degree() >= res.degree()) rep.degrees = false;
  if (!rep.degrees) rep.failures.push_back("parametrization degree not below deg q");

  // (c) primitivity
  rep.primitive = int_content(res.q) == 1;
  for (const auto& p : res.params) {
    BigInt vc = p.v.zero_p() ? BigInt(0) : int_content(p.v);
    if (int_gcd(int_abs(p.rho), vc) != 1) rep.primitive = false;
  }
  if (!rep.primitive) rep.failures.push_back("data not primitive");

  // (d) substitution identity for every equation
  rep.equations = true;
  if (system.nvars != n) {
    rep.equations = false;
    rep.failures.push_back("system arity does not match resolution");
  } else if (rep.squarefree || res.degree() >= 1) {
    ResidueView view = residue_view(res);
    try {
      auto values = system.eval(view.coords);
      for (size_t j = 0; j < values.size(); ++j) {
        if (!values[j].zero_p()) {
          rep.equations = false;
          rep.failures.push_back("equation " + std::to_string(j + 1) +
                                 " does not vanish on the parametrization");
        }
      }
    } catch (const std::exception& e) {
      rep.equations = false;
      rep.failures.push_back(std::string("substitution failed: ") + e.what());
    }
  }

  // (e) primitive-element consistency: sum lambda_i v_i / rho_i == T mod q
  {
    ResidueView view = residue_view(res);
    QuotElt<BigRat> acc = zero_like(view.coords.empty()
                                        ? QuotElt<BigRat>::generator(view.ctx)
                                        : view.coords[0]);
    for (int i = 0; i < n; ++i)
      acc = acc + scalar_mul(view.coords[i], BigRat(res.lambda[i]));
    rep.primitive_element = acc == QuotElt<BigRat>::generator(view.ctx);
    if (!rep.primitive_element)
      rep.failures.push_back("lambda-combination of parametrizations is not T");
  }

  // (f) denominator/discriminant compatibility. The reduced denominators of
  // a valid parametrization either absorb res(q, q') or divide it (up to a
  // leading-coefficient power); junk factors fail both divisibilities.
  {
    BigInt r = resultant(res.q, res.q.derivative());
    if (r == 0) {
      rep.discriminant = false;
      rep.failures.push_back("res(q, q') vanishes");
    } else {
      BigInt lc = res.q.lc();
      BigInt disc = r;  // res(q,q') = +- lc * disc
      if (res.degree() >= 1 && disc % lc == 0) disc = int_divexact(disc, lc);
      BigInt rho = res.rho_product();
      bool multiple = rho % disc == 0;
      bool divides = true;
      BigInt scaled = r * int_pow(lc, (unsigned long)std::max(res.degree() - 1, 0));
      for (const auto& p : res.params)
        if (scaled % p.rho != 0) divides = false;
      rep.discriminant = multiple || divides;
      if (!rep.discriminant)
        rep.failures.push_back("rho incompatible with res(q, q')");
    }
  }

  return rep;
}

Height resolution_height(const GeometricResolution& res) {
  Height h = height(res.q);
  for (const auto& p : res.params) {
    h = h.max_with(height(p.rho));
    h = h.max_with(height(p.v));
  }
  return h;
}

namespace {

json int_poly_to_json(const UniPoly<BigInt>& p) {
  json arr = json::array();
  for (const auto& c : p.coeffs()) arr.push_back(c.get_str());
  return arr;
}

UniPoly<BigInt> int_poly_from_json(const json& arr) {
  std::vector<BigInt> c;
  for (const auto& e : arr) c.emplace_back(e.get<std::string>());
  return UniPoly<BigInt>(std::move(c));
}

}  // namespace

std::string resolution_to_json(const GeometricResolution& res) {
  json j;
  j["lambda"] = json::array();
  for (const auto& l : res.lambda) j["lambda"].push_back(l.get_str());
  j["q"] = int_poly_to_json(res.q);
  j["params"] = json::array();
  for (const auto& p : res.params)
    j["params"].push_back({{"rho", p.rho.get_str()}, {"v", int_poly_to_json(p.v)}});
  return j.dump();
}

GeometricResolution resolution_from_json(const std::string& text) {
  json j = json::parse(text);
  GeometricResolution res;
  for (const auto& l : j.at("lambda")) res.lambda.emplace_back(l.get<std::string>());
  res.q = int_poly_from_json(j.at("q"));
  for (const auto& p : j.at("params")) {
    Parametrization par;
    par.rho = BigInt(p.at("rho").get<std::string>());
    par.v = int_poly_from_json(p.at("v"));
    res.params.push_back(std::move(par));
  }
  return res;
}

}  // namespace geosolve
