#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "geosolve/height.hpp"
#include "geosolve/ring.hpp"

namespace geosolve {

// One addend of a linear combination of earlier gates.
struct LinTerm {
  BigRat coeff;
  uint32_t gate;
  bool operator==(const LinTerm&) const = default;
};
// Sorted by gate index, coefficients nonzero, gates distinct.
using LinComb = std::vector<LinTerm>;

LinComb lc_add(const LinComb& a, const LinComb& b);
LinComb lc_scale(const LinComb& a, const BigRat& s);

struct Gate {
  enum class Kind { Input, Const, Mul };
  Kind kind = Kind::Input;
  int var = -1;    // Input
  BigInt cval;     // Const
  LinComb lhs, rhs;  // Mul: (linear combination) * (linear combination)
  bool operator==(const Gate&) const = default;
};

// Straight-line program: a DAG of multiplication gates over linear
// combinations. Canonical layout: gates 0..n-1 are the inputs, gate n is the
// constant 1, all later gates are products. Outputs are linear combinations
// of gates, so additions and scalar steps are free; size L counts only the
// essential multiplications.
struct Slp {
  int nvars = 0;
  std::vector<Gate> gates;
  std::vector<LinComb> outputs;

  uint32_t one_gate() const { return (uint32_t)nvars; }
  size_t num_outputs() const { return outputs.size(); }

  long size_muls() const;   // L
  int depth() const;        // longest chain of Mul gates from the inputs
  Height param_height() const;

  void check_canonical() const;  // throws on malformed programs

  template <class R>
  std::vector<R> eval(const std::vector<R>& point) const;

  bool operator==(const Slp&) const = default;
};

struct SlpMetrics {
  long L = 0;
  int depth = 0;
  Height h;
};
SlpMetrics metrics(const Slp& s);

struct SlpBounds {
  BigInt deg_bound;   // 2^depth
  BigRat ht_bound;    // (2^(depth+1)-1) (h + log2 L)
  BigRat value_bound; // (2^(depth+1)-1) (max{h,H} + log2 L)
};
SlpBounds degree_height_value_bounds(const Slp& s, const Height& H);

// Incremental construction with reuse of power gates.
class SlpBuilder {
 public:
  explicit SlpBuilder(int nvars);

  int nvars() const { return prog_.nvars; }
  LinComb one() const;
  LinComb input(int i) const;
  LinComb constant(const BigRat& c) const;

  // Adds a product gate (or folds constants) and returns the result.
  LinComb mul(const LinComb& a, const LinComb& b);
  LinComb pow(const LinComb& base, unsigned long e);

  Slp take(std::vector<LinComb> outputs);
  const Slp& program() const { return prog_; }

 private:
  bool constant_of(const LinComb& a, BigRat& out) const;
  Slp prog_;
  std::map<std::string, LinComb> pow_cache_;
};

// Ring of program fragments: running a generic ring algorithm on SlpExpr
// values records it as gates in the shared builder.
struct SlpExpr {
  SlpBuilder* b = nullptr;
  LinComb lc;

  SlpExpr operator-() const { return {b, lc_scale(lc, BigRat(-1))}; }
  friend SlpExpr operator+(const SlpExpr& x, const SlpExpr& y) {
    return {x.b ? x.b : y.b, lc_add(x.lc, y.lc)};
  }
  friend SlpExpr operator-(const SlpExpr& x, const SlpExpr& y) { return x + (-y); }
  friend SlpExpr operator*(const SlpExpr& x, const SlpExpr& y) {
    SlpBuilder* bb = x.b ? x.b : y.b;
    return {bb, bb->mul(x.lc, y.lc)};
  }
  bool operator==(const SlpExpr& o) const { return lc == o.lc; }
};

inline SlpExpr zero_like(const SlpExpr& e) { return {e.b, {}}; }
inline SlpExpr one_like(const SlpExpr& e) { return {e.b, e.b->one()}; }
inline bool is_zero(const SlpExpr& e) { return e.lc.empty(); }
bool is_one(const SlpExpr& e);
inline SlpExpr scalar_mul(const SlpExpr& e, const BigRat& s) { return {e.b, lc_scale(e.lc, s)}; }

// Parsing. Grammar: integers, variable names, binary + - *, unary -, ^ with
// a nonnegative integer exponent, parentheses. Powers compile to binary
// powering so depth stays logarithmic in the exponent.
struct ParseError : std::runtime_error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

Slp parse_poly(const std::string& expr, const std::vector<std::string>& variables);
// Parses several expressions into one program (shared gates), one output each.
Slp parse_system(const std::vector<std::string>& exprs,
                 const std::vector<std::string>& variables);

// Appends a copy of `s` to the builder with its inputs replaced by the given
// combinations; returns the relocated outputs.
std::vector<LinComb> append_substituted(SlpBuilder& b, const Slp& s,
                                        const std::vector<LinComb>& input_subst);

// Restricts a program to a prefix of its outputs.
Slp take_outputs(const Slp& s, size_t count);

// Same gates and inputs, plus every first partial derivative. Output layout:
// the s originals, then d f_i / d X_j at index s + i*n + j.
Slp derive_all(const Slp& s);

// Splits every output into homogeneous components of degree 0..D.
// Output layout: components of output i at indices i*(D+1) + k.
Slp homogeneous_components(const Slp& s, int D);

// Divided-difference program over 2n variables (X then Y): outputs the n^2
// polynomials l_{jk} with f_j(Y) - f_j(X) = sum_k l_{jk} (Y_k - X_k),
// j-major. Built by telescoping the per-gate product rule.
Slp divided_differences(const Slp& s);

// Correct-test-sequence parameters for the class of programs of size <= L
// and depth <= depth.
struct QuestorParams {
  BigInt u;
  BigInt t;
};
QuestorParams questor_params(long L, int depth);

// One-sided randomized identity test on integer points from
// {1..range_bound}^n: "nonzero" is always correct.
bool probabilistic_zero_test(const Slp& s, long trials, const BigInt& range_bound,
                             uint64_t seed);

std::string slp_to_json(const Slp& s);
Slp slp_from_json(const std::string& text);

// ---------- templated evaluation ----------

template <class R>
std::vector<R> Slp::eval(const std::vector<R>& point) const {
  if ((int)point.size() != nvars)
    throw std::invalid_argument("eval: arity mismatch");
  if (point.empty()) throw std::invalid_argument("eval: empty point");
  const R& like = point[0];
  std::vector<R> val;
  val.reserve(gates.size());
  auto eval_lc = [&](const LinComb& lc) -> R {
    R acc = zero_like(like);
    for (const auto& t : lc) acc = acc + scalar_mul(val[t.gate], t.coeff);
    return acc;
  };
  for (const auto& g : gates) {
    switch (g.kind) {
      case Gate::Kind::Input:
        val.push_back(point[g.var]);
        break;
      case Gate::Kind::Const:
        val.push_back(scalar_mul(one_like(like), BigRat(g.cval)));
        break;
      case Gate::Kind::Mul:
        val.push_back(eval_lc(g.lhs) * eval_lc(g.rhs));
        break;
    }
  }
  std::vector<R> out;
  out.reserve(outputs.size());
  for (const auto& o : outputs) out.push_back(eval_lc(o));
  return out;
}

}  // namespace geosolve
