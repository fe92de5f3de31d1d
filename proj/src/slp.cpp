#include "geosolve/slp.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

namespace geosolve {

using nlohmann::json;

LinComb lc_add(const LinComb& a, const LinComb& b) {
  LinComb r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].gate < b[j].gate)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].gate < a[i].gate) {
      r.push_back(b[j++]);
    } else {
      BigRat c = a[i].coeff + b[j].coeff;
      if (c != 0) r.push_back({std::move(c), a[i].gate});
      ++i;
      ++j;
    }
  }
  return r;
}

LinComb lc_scale(const LinComb& a, const BigRat& s) {
  if (s == 0) return {};
  LinComb r = a;
  for (auto& t : r) t.coeff *= s;
  return r;
}

long Slp::size_muls() const {
  long L = 0;
  for (const auto& g : gates)
    if (g.kind == Gate::Kind::Mul) ++L;
  return L;
}

int Slp::depth() const {
  std::vector<int> d(gates.size(), 0);
  int best = 0;
  for (size_t i = 0; i < gates.size(); ++i) {
    if (gates[i].kind != Gate::Kind::Mul) continue;
    int m = 0;
    for (const auto& t : gates[i].lhs) m = std::max(m, d[t.gate]);
    for (const auto& t : gates[i].rhs) m = std::max(m, d[t.gate]);
    d[i] = m + 1;
    best = std::max(best, d[i]);
  }
  return best;
}

Height Slp::param_height() const {
  Height h;
  auto lc_h = [&](const LinComb& lc) {
    for (const auto& t : lc) h = h.max_with(height(t.coeff));
  };
  for (const auto& g : gates) {
    if (g.kind == Gate::Kind::Const) h = h.max_with(height(g.cval));
    if (g.kind == Gate::Kind::Mul) {
      lc_h(g.lhs);
      lc_h(g.rhs);
    }
  }
  for (const auto& o : outputs) lc_h(o);
  return h;
}

void Slp::check_canonical() const {
  if (nvars < 1) throw std::invalid_argument("program needs at least one variable");
  if ((int)gates.size() < nvars + 1) throw std::invalid_argument("missing input gates");
  for (int i = 0; i < nvars; ++i)
    if (gates[i].kind != Gate::Kind::Input || gates[i].var != i)
      throw std::invalid_argument("non-canonical input gates");
  if (gates[nvars].kind != Gate::Kind::Const || gates[nvars].cval != 1)
    throw std::invalid_argument("missing constant-one gate");
  for (size_t i = nvars + 1; i < gates.size(); ++i) {
    if (gates[i].kind != Gate::Kind::Mul)
      throw std::invalid_argument("stray indegree-0 gate");
    for (const auto& t : gates[i].lhs)
      if (t.gate >= i) throw std::invalid_argument("forward gate reference");
    for (const auto& t : gates[i].rhs)
      if (t.gate >= i) throw std::invalid_argument("forward gate reference");
  }
  for (const auto& o : outputs)
    for (const auto& t : o)
      if (t.gate >= gates.size()) throw std::invalid_argument("output references missing gate");
}

SlpMetrics metrics(const Slp& s) { return {s.size_muls(), s.depth(), s.param_height()}; }

SlpBounds degree_height_value_bounds(const Slp& s, const Height& H) {
  SlpMetrics m = metrics(s);
  SlpBounds b;
  b.deg_bound = int_pow(BigInt(2), (unsigned long)m.depth);
  BigRat factor = BigRat(int_pow(BigInt(2), (unsigned long)m.depth + 1) - 1);
  BigRat logL = m.L >= 2 ? log2_upper(BigInt(m.L)) : BigRat(0);
  b.ht_bound = factor * (m.h.v + logL);
  BigRat hh = std::max(m.h.v, H.v);
  b.value_bound = factor * (hh + logL);
  return b;
}

// ---------- builder ----------

SlpBuilder::SlpBuilder(int nvars) {
  if (nvars < 1) throw std::invalid_argument("program needs at least one variable");
  prog_.nvars = nvars;
  for (int i = 0; i < nvars; ++i) {
    Gate g;
    g.kind = Gate::Kind::Input;
    g.var = i;
    prog_.gates.push_back(std::move(g));
  }
  Gate one;
  one.kind = Gate::Kind::Const;
  one.cval = 1;
  prog_.gates.push_back(std::move(one));
}

LinComb SlpBuilder::one() const { return {{BigRat(1), prog_.one_gate()}}; }

LinComb SlpBuilder::input(int i) const {
  if (i < 0 || i >= prog_.nvars) throw std::invalid_argument("input index out of range");
  return {{BigRat(1), (uint32_t)i}};
}

LinComb SlpBuilder::constant(const BigRat& c) const {
  if (c == 0) return {};
  return {{c, prog_.one_gate()}};
}

bool SlpBuilder::constant_of(const LinComb& a, BigRat& out) const {
  if (a.empty()) {
    out = 0;
    return true;
  }
  if (a.size() == 1 && a[0].gate == prog_.one_gate()) {
    out = a[0].coeff;
    return true;
  }
  return false;
}

LinComb SlpBuilder::mul(const LinComb& a, const LinComb& b) {
  BigRat c;
  if (constant_of(a, c)) return lc_scale(b, c);
  if (constant_of(b, c)) return lc_scale(a, c);
  Gate g;
  g.kind = Gate::Kind::Mul;
  g.lhs = a;
  g.rhs = b;
  prog_.gates.push_back(std::move(g));
  return {{BigRat(1), (uint32_t)(prog_.gates.size() - 1)}};
}

static std::string lc_key(const LinComb& lc) {
  std::string k;
  for (const auto& t : lc) {
    k += rat_to_string(t.coeff);
    k += '@';
    k += std::to_string(t.gate);
    k += ';';
  }
  return k;
}

LinComb SlpBuilder::pow(const LinComb& base, unsigned long e) {
  if (e == 0) return one();
  if (e == 1) return base;
  BigRat c;
  if (constant_of(base, c)) return constant(rat_pow(c, (long)e));
  std::string key = lc_key(base) + "^" + std::to_string(e);
  auto it = pow_cache_.find(key);
  if (it != pow_cache_.end()) return it->second;
  LinComb half = pow(base, e / 2);
  LinComb sq = mul(half, half);
  LinComb r = (e % 2) ? mul(sq, base) : sq;
  pow_cache_[key] = r;
  return r;
}

Slp SlpBuilder::take(std::vector<LinComb> outputs) {
  Slp out = prog_;
  out.outputs = std::move(outputs);
  out.check_canonical();
  return out;
}

bool is_one(const SlpExpr& e) {
  return e.lc.size() == 1 && e.lc[0].coeff == 1 && e.b &&
         e.lc[0].gate == e.b->program().one_gate();
}

// ---------- parser ----------

namespace {

struct Token {
  enum class Kind { Int, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };
  Kind kind;
  std::string text;
  size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace((unsigned char)c)) {
      ++i;
      continue;
    }
    if (std::isdigit((unsigned char)c)) {
      size_t j = i;
      while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
      out.push_back({Token::Kind::Int, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) ++j;
      out.push_back({Token::Kind::Ident, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    Token::Kind k;
    switch (c) {
      case '+': k = Token::Kind::Plus; break;
      case '-': k = Token::Kind::Minus; break;
      case '*': k = Token::Kind::Star; break;
      case '^': k = Token::Kind::Caret; break;
      case '(': k = Token::Kind::LParen; break;
      case ')': k = Token::Kind::RParen; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({k, std::string(1, c), i});
    ++i;
  }
  out.push_back({Token::Kind::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, SlpBuilder& b, const std::map<std::string, int>& vars)
      : t_(std::move(toks)), b_(b), vars_(vars) {}

  LinComb parse() {
    LinComb r = expr();
    expect(Token::Kind::End, "end of expression");
    return r;
  }

 private:
  const Token& cur() const { return t_[i_]; }
  void advance() { ++i_; }
  void expect(Token::Kind k, const std::string& what) {
    if (cur().kind != k) throw ParseError("expected " + what, cur().pos);
  }

  LinComb expr() {
    bool neg = false;
    while (cur().kind == Token::Kind::Plus || cur().kind == Token::Kind::Minus) {
      if (cur().kind == Token::Kind::Minus) neg = !neg;
      advance();
    }
    LinComb acc = term();
    if (neg) acc = lc_scale(acc, BigRat(-1));
    while (cur().kind == Token::Kind::Plus || cur().kind == Token::Kind::Minus) {
      bool minus = cur().kind == Token::Kind::Minus;
      advance();
      LinComb rhs = term();
      acc = lc_add(acc, minus ? lc_scale(rhs, BigRat(-1)) : rhs);
    }
    return acc;
  }

  LinComb term() {
    LinComb acc = factor();
    while (cur().kind == Token::Kind::Star) {
      advance();
      acc = b_.mul(acc, factor());
    }
    return acc;
  }

  LinComb factor() {
    bool neg = false;
    while (cur().kind == Token::Kind::Minus) {
      neg = !neg;
      advance();
    }
    LinComb base = atom();
    if (cur().kind == Token::Kind::Caret) {
      advance();
      expect(Token::Kind::Int, "a nonnegative integer exponent");
      unsigned long e = std::stoul(cur().text);
      advance();
      base = b_.pow(base, e);
    }
    return neg ? lc_scale(base, BigRat(-1)) : base;
  }

  LinComb atom() {
    if (cur().kind == Token::Kind::Int) {
      BigRat v(BigInt(cur().text));
      advance();
      return b_.constant(v);
    }
    if (cur().kind == Token::Kind::Ident) {
      auto it = vars_.find(cur().text);
      if (it == vars_.end())
        throw ParseError("unknown variable '" + cur().text + "'", cur().pos);
      advance();
      return b_.input(it->second);
    }
    if (cur().kind == Token::Kind::LParen) {
      advance();
      LinComb r = expr();
      expect(Token::Kind::RParen, "')'");
      advance();
      return r;
    }
    throw ParseError("expected a value", cur().pos);
  }

  std::vector<Token> t_;
  size_t i_ = 0;
  SlpBuilder& b_;
  const std::map<std::string, int>& vars_;
};

std::map<std::string, int> var_table(const std::vector<std::string>& names) {
  std::map<std::string, int> vars;
  for (size_t i = 0; i < names.size(); ++i) {
    if (!vars.emplace(names[i], (int)i).second)
      throw std::invalid_argument("duplicate variable name: " + names[i]);
  }
  return vars;
}

}  // namespace

Slp parse_system(const std::vector<std::string>& exprs,
                 const std::vector<std::string>& variables) {
  auto vars = var_table(variables);
  SlpBuilder b((int)variables.size());
  std::vector<LinComb> outs;
  for (const auto& e : exprs) {
    Parser p(tokenize(e), b, vars);
    outs.push_back(p.parse());
  }
  return b.take(std::move(outs));
}

Slp parse_poly(const std::string& expr, const std::vector<std::string>& variables) {
  return parse_system({expr}, variables);
}

// ---------- transforms ----------

std::vector<LinComb> append_substituted(SlpBuilder& b, const Slp& s,
                                        const std::vector<LinComb>& input_subst) {
  if ((int)input_subst.size() != s.nvars)
    throw std::invalid_argument("append_substituted: arity mismatch");
  std::vector<LinComb> image(s.gates.size());
  auto remap = [&](const LinComb& lc) {
    LinComb acc;
    for (const auto& t : lc) acc = lc_add(acc, lc_scale(image[t.gate], t.coeff));
    return acc;
  };
  for (size_t i = 0; i < s.gates.size(); ++i) {
    const Gate& g = s.gates[i];
    switch (g.kind) {
      case Gate::Kind::Input:
        image[i] = input_subst[g.var];
        break;
      case Gate::Kind::Const:
        image[i] = lc_scale(b.one(), BigRat(g.cval));
        break;
      case Gate::Kind::Mul:
        image[i] = b.mul(remap(g.lhs), remap(g.rhs));
        break;
    }
  }
  std::vector<LinComb> outs;
  outs.reserve(s.outputs.size());
  for (const auto& o : s.outputs) outs.push_back(remap(o));
  return outs;
}

Slp take_outputs(const Slp& s, size_t count) {
  Slp r = s;
  r.outputs.resize(std::min(count, s.outputs.size()));
  return r;
}

Slp derive_all(const Slp& s) {
  s.check_canonical();
  const int n = s.nvars;
  SlpBuilder b(n);
  std::vector<LinComb> image(s.gates.size());
  // dtab[g][j]: d(gate g)/dX_j as a combination of already-built gates
  std::vector<std::vector<LinComb>> dtab(s.gates.size(), std::vector<LinComb>(n));
  auto remap = [&](const LinComb& lc) {
    LinComb acc;
    for (const auto& t : lc) acc = lc_add(acc, lc_scale(image[t.gate], t.coeff));
    return acc;
  };
  auto d_of = [&](const LinComb& lc, int j) {
    LinComb acc;
    for (const auto& t : lc) acc = lc_add(acc, lc_scale(dtab[t.gate][j], t.coeff));
    return acc;
  };
  for (size_t i = 0; i < s.gates.size(); ++i) {
    const Gate& g = s.gates[i];
    switch (g.kind) {
      case Gate::Kind::Input:
        image[i] = b.input(g.var);
        dtab[i][g.var] = b.one();
        break;
      case Gate::Kind::Const:
        image[i] = lc_scale(b.one(), BigRat(g.cval));
        break;
      case Gate::Kind::Mul: {
        LinComb A = remap(g.lhs), B = remap(g.rhs);
        image[i] = b.mul(A, B);
        for (int j = 0; j < n; ++j) {
          LinComb dA = d_of(g.lhs, j), dB = d_of(g.rhs, j);
          LinComb p = dA.empty() ? LinComb{} : b.mul(dA, B);
          LinComb q = dB.empty() ? LinComb{} : b.mul(A, dB);
          dtab[i][j] = lc_add(p, q);
        }
        break;
      }
    }
  }
  std::vector<LinComb> outs;
  for (const auto& o : s.outputs) outs.push_back(remap(o));
  for (const auto& o : s.outputs)
    for (int j = 0; j < n; ++j) {
      LinComb acc;
      for (const auto& t : o) acc = lc_add(acc, lc_scale(dtab[t.gate][j], t.coeff));
      outs.push_back(std::move(acc));
    }
  return b.take(std::move(outs));
}

Slp homogeneous_components(const Slp& s, int D) {
  s.check_canonical();
  if (D < 0) throw std::invalid_argument("negative degree bound");
  const int n = s.nvars;
  SlpBuilder b(n);
  // comp[g][k]: degree-k homogeneous component of gate g
  std::vector<std::vector<LinComb>> comp(s.gates.size(),
                                         std::vector<LinComb>(D + 1));
  for (size_t i = 0; i < s.gates.size(); ++i) {
    const Gate& g = s.gates[i];
    switch (g.kind) {
      case Gate::Kind::Input:
        if (D >= 1) comp[i][1] = b.input(g.var);
        break;
      case Gate::Kind::Const:
        comp[i][0] = lc_scale(b.one(), BigRat(g.cval));
        break;
      case Gate::Kind::Mul: {
        std::vector<LinComb> A(D + 1), B(D + 1);
        for (int k = 0; k <= D; ++k) {
          for (const auto& t : g.lhs) A[k] = lc_add(A[k], lc_scale(comp[t.gate][k], t.coeff));
          for (const auto& t : g.rhs) B[k] = lc_add(B[k], lc_scale(comp[t.gate][k], t.coeff));
        }
        for (int k = 0; k <= D; ++k) {
          LinComb acc;
          for (int a = 0; a <= k; ++a) {
            if (A[a].empty() || B[k - a].empty()) continue;
            acc = lc_add(acc, b.mul(A[a], B[k - a]));
          }
          comp[i][k] = std::move(acc);
        }
        break;
      }
    }
  }
  std::vector<LinComb> outs;
  for (const auto& o : s.outputs)
    for (int k = 0; k <= D; ++k) {
      LinComb acc;
      for (const auto& t : o) acc = lc_add(acc, lc_scale(comp[t.gate][k], t.coeff));
      outs.push_back(std::move(acc));
    }
  return b.take(std::move(outs));
}

Slp divided_differences(const Slp& s) {
  s.check_canonical();
  const int n = s.nvars;
  SlpBuilder b(2 * n);
  std::vector<LinComb> xg(s.gates.size()), yg(s.gates.size());
  std::vector<std::vector<LinComb>> dd(s.gates.size(), std::vector<LinComb>(n));
  auto remap = [&](const LinComb& lc, const std::vector<LinComb>& img) {
    LinComb acc;
    for (const auto& t : lc) acc = lc_add(acc, lc_scale(img[t.gate], t.coeff));
    return acc;
  };
  auto dd_of = [&](const LinComb& lc, int k) {
    LinComb acc;
    for (const auto& t : lc) acc = lc_add(acc, lc_scale(dd[t.gate][k], t.coeff));
    return acc;
  };
  for (size_t i = 0; i < s.gates.size(); ++i) {
    const Gate& g = s.gates[i];
    switch (g.kind) {
      case Gate::Kind::Input:
        xg[i] = b.input(g.var);
        yg[i] = b.input(n + g.var);
        dd[i][g.var] = b.one();
        break;
      case Gate::Kind::Const:
        xg[i] = yg[i] = lc_scale(b.one(), BigRat(g.cval));
        break;
      case Gate::Kind::Mul: {
        LinComb xA = remap(g.lhs, xg), xB = remap(g.rhs, xg);
        LinComb yA = remap(g.lhs, yg), yB = remap(g.rhs, yg);
        xg[i] = b.mul(xA, xB);
        yg[i] = b.mul(yA, yB);
        // g(Y) - g(X) = A(Y)(B(Y) - B(X)) + (A(Y) - A(X)) B(X)
        for (int k = 0; k < n; ++k) {
          LinComb dB = dd_of(g.rhs, k), dA = dd_of(g.lhs, k);
          LinComb p = dB.empty() ? LinComb{} : b.mul(yA, dB);
          LinComb q = dA.empty() ? LinComb{} : b.mul(dA, xB);
          dd[i][k] = lc_add(p, q);
        }
        break;
      }
    }
  }
  std::vector<LinComb> outs;
  for (const auto& o : s.outputs)
    for (int k = 0; k < n; ++k) {
      LinComb acc;
      for (const auto& t : o) acc = lc_add(acc, lc_scale(dd[t.gate][k], t.coeff));
      outs.push_back(std::move(acc));
    }
  return b.take(std::move(outs));
}

QuestorParams questor_params(long L, int depth) {
  if (L < 0 || depth < 0) throw std::invalid_argument("questor_params: negative input");
  BigInt two(2);
  BigInt p1 = int_pow(two, (unsigned long)depth + 1) - 2;
  BigInt p2 = int_pow(two, (unsigned long)depth) + 1;
  BigInt ll = BigInt((long)depth) * BigInt(L);
  return {p1 * p2 * p2, 6 * ll * ll};
}

bool probabilistic_zero_test(const Slp& s, long trials, const BigInt& range_bound,
                             uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (range_bound < 2) throw std::invalid_argument("range_bound must be >= 2");
  std::mt19937_64 rng(seed);
  unsigned long span = range_bound.fits_ulong_p() ? range_bound.get_ui() : 0;
  for (long t = 0; t < trials; ++t) {
    std::vector<BigRat> point;
    point.reserve(s.nvars);
    for (int i = 0; i < s.nvars; ++i) {
      BigInt v;
      if (span) {
        v = BigInt(1 + (unsigned long)(rng() % span));
      } else {
        // range beyond 64 bits: combine two draws
        BigInt wide = BigInt(rng()) * BigInt(rng());
        v = 1 + wide % range_bound;
      }
      point.emplace_back(v);
    }
    for (const auto& value : s.eval(point))
      if (value != 0) return false;
  }
  return true;
}

// ---------- JSON ----------

namespace {

// A linear combination splits into parallel "scalars" and "refs" arrays.
void lc_to_json(const LinComb& lc, json& scalars, json& refs) {
  scalars = json::array();
  refs = json::array();
  for (const auto& t : lc) {
    scalars.push_back(rat_to_string(t.coeff));
    refs.push_back(t.gate);
  }
}

LinComb lc_from_json(const json& scalars, const json& refs) {
  LinComb lc;
  for (size_t i = 0; i < scalars.size(); ++i)
    lc.push_back({rat_from_string(scalars.at(i).get<std::string>()),
                  refs.at(i).get<uint32_t>()});
  return lc;
}

}  // namespace

std::string slp_to_json(const Slp& s) {
  json gates = json::array();
  for (const auto& g : s.gates) {
    switch (g.kind) {
      case Gate::Kind::Input:
        gates.push_back({{"kind", "input"}, {"var", g.var}});
        break;
      case Gate::Kind::Const:
        gates.push_back({{"kind", "const"}, {"value", g.cval.get_str()}});
        break;
      case Gate::Kind::Mul: {
        json sl, rl, sr, rr;
        lc_to_json(g.lhs, sl, rl);
        lc_to_json(g.rhs, sr, rr);
        gates.push_back({{"kind", "mul"},
                         {"scalars", {{"lhs", sl}, {"rhs", sr}}},
                         {"refs", {{"lhs", rl}, {"rhs", rr}}}});
        break;
      }
    }
  }
  json out = {{"nvars", s.nvars}, {"gates", gates}, {"outputs", json::array()}};
  for (const auto& o : s.outputs) {
    json sc, rf;
    lc_to_json(o, sc, rf);
    out["outputs"].push_back({{"scalars", sc}, {"refs", rf}});
  }
  return out.dump();
}

Slp slp_from_json(const std::string& text) {
  json j = json::parse(text);
  Slp s;
  s.nvars = j.at("nvars").get<int>();
  for (const auto& g : j.at("gates")) {
    Gate gate;
    std::string kind = g.at("kind").get<std::string>();
    if (kind == "input") {
      gate.kind = Gate::Kind::Input;
      gate.var = g.at("var").get<int>();
    } else if (kind == "const") {
      gate.kind = Gate::Kind::Const;
      gate.cval = BigInt(g.at("value").get<std::string>());
    } else if (kind == "mul") {
      gate.kind = Gate::Kind::Mul;
      gate.lhs = lc_from_json(g.at("scalars").at("lhs"), g.at("refs").at("lhs"));
      gate.rhs = lc_from_json(g.at("scalars").at("rhs"), g.at("refs").at("rhs"));
    } else {
      throw std::invalid_argument("unknown gate kind: " + kind);
    }
    s.gates.push_back(std::move(gate));
  }
  for (const auto& o : j.at("outputs"))
    s.outputs.push_back(lc_from_json(o.at("scalars"), o.at("refs")));
  s.check_canonical();
  return s;
}

}  // namespace geosolve
