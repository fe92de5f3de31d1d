#include "geosolve/liouville.hpp"

#include <json.hpp>

#include <algorithm>

namespace geosolve {

using nlohmann::json;

// ---------- Sturm sequences ----------

std::vector<UniPoly<BigRat>> sturm_chain(const UniPoly<BigRat>& p) {
  std::vector<UniPoly<BigRat>> chain;
  if (p.zero_p()) return chain;
  chain.push_back(p);
  UniPoly<BigRat> d = p.derivative();
  if (d.zero_p()) return chain;
  chain.push_back(d);
  while (true) {
    const UniPoly<BigRat>& a = chain[chain.size() - 2];
    const UniPoly<BigRat>& b = chain[chain.size() - 1];
    UniPoly<BigRat> r = divrem(a, b).second;
    if (r.zero_p()) break;
    chain.push_back(-r);
  }
  return chain;
}

int sturm_sign_changes(const std::vector<UniPoly<BigRat>>& chain, const BigRat& x) {
  int changes = 0, prev = 0;
  for (const auto& p : chain) {
    BigRat v = p.eval(x);
    int s = v == 0 ? 0 : (v > 0 ? 1 : -1);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

namespace {

BigRat cauchy_root_bound(const UniPoly<BigRat>& p) {
  BigRat m(0);
  for (int i = 0; i < p.degree(); ++i) {
    BigRat r = p.coeffs()[i] / p.lc();
    if (r < 0) r = -r;
    if (r > m) m = r;
  }
  return m + 1;
}

}  // namespace

std::vector<std::pair<BigRat, BigRat>> isolate_real_roots(const UniPoly<BigRat>& p) {
  std::vector<std::pair<BigRat, BigRat>> out;
  if (p.degree() < 1) return out;
  UniPoly<BigRat> sf = squarefree_part(p);
  auto chain = sturm_chain(sf);
  BigRat bound = cauchy_root_bound(sf);
  struct Seg {
    BigRat lo, hi;
    int vlo, vhi;
  };
  std::vector<Seg> work{{-bound, bound, sturm_sign_changes(chain, -bound),
                         sturm_sign_changes(chain, bound)}};
  while (!work.empty()) {
    Seg s = work.back();
    work.pop_back();
    int roots = s.vlo - s.vhi;
    if (roots <= 0) continue;
    if (roots == 1) {
      out.push_back({s.lo, s.hi});
      continue;
    }
    BigRat mid = (s.lo + s.hi) / 2;
    // nudge off a root: (lo, mid] and (mid, hi] partition the count
    int vm = sturm_sign_changes(chain, mid);
    work.push_back({s.lo, mid, s.vlo, vm});
    work.push_back({mid, s.hi, vm, s.vhi});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::pair<BigRat, BigRat> refine_root(const UniPoly<BigRat>& p,
                                      std::pair<BigRat, BigRat> iv, const BigRat& width) {
  UniPoly<BigRat> sf = squarefree_part(p);
  auto chain = sturm_chain(sf);
  int vlo = sturm_sign_changes(chain, iv.first);
  while (iv.second - iv.first > width) {
    BigRat mid = (iv.first + iv.second) / 2;
    int vm = sturm_sign_changes(chain, mid);
    if (vlo - vm >= 1) {
      iv.second = mid;
    } else {
      iv.first = mid;
      vlo = vm;
    }
  }
  return iv;
}

// ---------- bounds ----------

namespace {

// Exact rational upper bound on sqrt(n).
BigRat sqrt_upper(const BigInt& n) {
  BigInt scaled = n << 64;
  BigInt s = int_isqrt(scaled) + 1;
  return make_rat(s, BigInt(1) << 32);
}

}  // namespace

std::pair<BigRat, BigRat> norm_denominator_bounds(const GeometricResolution& res) {
  const int n = res.nvars();
  const int delta = res.degree();
  BigInt lc = int_abs(res.q.lc());
  BigRat dv = BigRat(int_pow(lc, (unsigned long)std::max(delta - 1, 0)) *
                     int_abs(res.rho_product()));
  Height ht = resolution_height(res);
  BigRat norm = sqrt_upper(BigInt(n)) * BigRat((long)delta) *
                pow2_upper(BigRat((long)delta) * ht.v);
  return {dv, norm};
}

Slp build_separating_polynomial(const GaussianInt& p, const BigInt& q, int nvars) {
  if (q < 1) throw std::invalid_argument("denominator must be >= 1");
  // q^2 X^2 - q (p + conj p) X + p conj p
  SlpBuilder b(nvars);
  LinComb x = b.input(0);
  LinComb x2 = b.mul(x, x);
  LinComb acc = lc_scale(x2, BigRat(q * q));
  acc = lc_add(acc, lc_scale(x, BigRat(-q * p.twice_real())));
  acc = lc_add(acc, b.constant(BigRat(p.norm())));
  return b.take({acc});
}

Slp slp_from_dense(const MultiPoly& g, int nvars) {
  SlpBuilder b(nvars);
  LinComb acc;
  for (const auto& [e, c] : g.terms()) {
    LinComb term = b.one();
    for (int i = 0; i < nvars; ++i)
      if (e[i]) term = b.mul(term, b.pow(b.input(i), e[i]));
    acc = lc_add(acc, lc_scale(term, c));
  }
  return b.take({acc});
}

BoundReport certified_denominator_bound(const ApproximationQuery& query,
                                        const BezoutWitness& witness,
                                        const GeometricResolution& res) {
  if (query.epsilon > 1 || query.epsilon <= 0)
    throw std::invalid_argument("epsilon must be in (0, 1]");
  const int n = res.nvars();
  BoundReport rep;
  auto [dv, norm] = norm_denominator_bounds(res);
  rep.dv_bound = dv;
  rep.norm_bound = norm;

  // |g(alpha)| bounded two ways, the smaller kept:
  // (1) the program value bound from the size/depth/height of g,
  // (2) coefficient sums against enclosures of |alpha_i|.
  Slp g_slp = slp_from_dense(witness.g, n);
  Height H(log2_upper(norm) >= 1 ? log2_upper(norm) : BigRat(1));
  SlpBounds sb = degree_height_value_bounds(g_slp, H);
  BigRat g_log2_a = sb.value_bound;

  BigRat radius = norm;  // |alpha_i| <= ||alpha|| <= norm bound
  // one-variable resolutions with real roots give tighter per-root radii
  if (n >= 1) {
    UniPoly<BigRat> qm = make_monic(to_rat_poly(res.q));
    auto roots = isolate_real_roots(qm);
    if ((int)roots.size() == res.degree() && !roots.empty()) {
      BigRat best(0);
      for (auto iv : roots) {
        iv = refine_root(qm, iv, make_rat(BigInt(1), BigInt(1024)));
        BigRat m = std::max(iv.first < 0 ? -iv.first : iv.first,
                            iv.second < 0 ? -iv.second : iv.second);
        if (m > best) best = m;
      }
      // real primitive-element values; coordinates still need the general
      // norm bound unless n == 1, where alpha = root itself
      if (n == 1 && best < radius) radius = best;
    }
  }
  BigRat sum(0);
  for (const auto& [e, c] : witness.g.terms()) {
    BigRat t = c < 0 ? -c : c;
    int deg = 0;
    for (auto x : e) deg += (int)x;
    sum += t * rat_pow(radius < 1 ? BigRat(1) : radius, deg);
  }
  BigRat g_log2_b = sum > 0 ? log2_upper(sum) : BigRat(0);
  rep.g_value_log2 = std::min(g_log2_a, g_log2_b);

  BigRat eps_log2 = log2_upper(query.epsilon);
  BigRat tail = log2_upper(2 * norm + 1);
  rep.log2_denominator_bound = (-eps_log2 - rep.g_value_log2 - tail) / 2;

  rep.thm_form = "log2(q) >= (" + rat_to_string(-eps_log2) + ") / (" +
                 std::to_string(n) + "*d*" + std::to_string(res.degree()) +
                 ")^C - (h + eta), C universal";
  rep.trace.push_back("norm bound ||V|| <= " + rat_to_string(norm));
  rep.trace.push_back("denominator bound d_V <= " + rat_to_string(dv));
  rep.trace.push_back("log2|g(alpha)| <= " + rat_to_string(rep.g_value_log2) +
                      " (program bound " + rat_to_string(g_log2_a) +
                      ", coefficient bound " + rat_to_string(g_log2_b) + ")");
  rep.trace.push_back("-log2(eps) >= " + rat_to_string(-eps_log2));
  rep.trace.push_back("log2(q) >= (-log2 eps - log2|g(alpha)| - log2(2||V||+1)) / 2 = " +
                      rat_to_string(rep.log2_denominator_bound));
  return rep;
}

std::string bound_report_to_json(const BoundReport& r) {
  json j;
  j["log2_denominator_bound"] = rat_to_string(r.log2_denominator_bound);
  j["dv_bound"] = rat_to_string(r.dv_bound);
  j["norm_bound"] = rat_to_string(r.norm_bound);
  j["g_value_log2"] = rat_to_string(r.g_value_log2);
  j["thm_form"] = r.thm_form;
  j["trace"] = r.trace;
  return j.dump();
}

}  // namespace geosolve
