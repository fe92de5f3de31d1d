#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "geosolve/duality.hpp"
#include "geosolve/liouville.hpp"
#include "geosolve/solver.hpp"

using namespace geosolve;
using nlohmann::json;

namespace {

struct SystemFile {
  std::vector<std::string> variables;
  std::vector<std::string> equations;
  uint64_t seed = 0;
  int retries = 25;
};

SystemFile read_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j = json::parse(in);
  SystemFile f;
  for (const auto& v : j.at("variables")) f.variables.push_back(v.get<std::string>());
  for (const auto& e : j.at("equations")) f.equations.push_back(e.get<std::string>());
  if (f.variables.empty()) throw std::runtime_error("no variables");
  if (f.equations.empty()) throw std::runtime_error("no equations");
  {
    std::set<std::string> seen(f.variables.begin(), f.variables.end());
    if (seen.size() != f.variables.size())
      throw std::runtime_error("variable names must be distinct");
  }
  if (j.contains("seed")) f.seed = j.at("seed").get<uint64_t>();
  if (j.contains("retries")) f.retries = j.at("retries").get<int>();
  return f;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text << "\n";
  }
}

json levels_to_json(const SolveResult& r) {
  json levels = json::array();
  for (const auto& l : r.levels) {
    json point = json::array();
    for (const auto& p : l.lifting_point) point.push_back(p.get_str());
    json lambda = json::array();
    for (const auto& x : l.lambda) lambda.push_back(x.get_str());
    levels.push_back({{"level", l.level},
                      {"degree", l.fiber_degree},
                      {"height_log2", rat_to_string(l.fiber_height.v)},
                      {"point", point},
                      {"lambda", lambda},
                      {"curve_cap", l.curve_cap}});
  }
  return levels;
}

json validation_to_json(const ValidationReport& rep) {
  return json{{"squarefree", rep.squarefree},
              {"degrees", rep.degrees},
              {"primitive", rep.primitive},
              {"equations", rep.equations},
              {"primitive_element", rep.primitive_element},
              {"discriminant", rep.discriminant},
              {"ok", rep.ok()},
              {"failures", rep.failures}};
}

GaussianInt parse_gaussian(std::string s) {
  // forms: "a", "bi", "a+bi", "a-bi", "i", "-i"
  GaussianInt g;
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  if (s.empty()) throw std::runtime_error("empty Gaussian integer");
  size_t ipos = s.find('i');
  if (ipos == std::string::npos) {
    g.re = BigInt(s);
    return g;
  }
  // split the imaginary part: find the sign separating the two parts (not at 0)
  size_t split = std::string::npos;
  for (size_t k = 1; k + 1 < s.size(); ++k)
    if ((s[k] == '+' || s[k] == '-') && (isdigit((unsigned char)s[k - 1])))
      split = k;
  std::string re_part, im_part;
  if (split == std::string::npos) {
    im_part = s.substr(0, s.size() - 1);
  } else {
    re_part = s.substr(0, split);
    im_part = s.substr(split, s.size() - split - 1);
  }
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  if (!re_part.empty()) g.re = BigInt(re_part);
  g.im = BigInt(im_part);
  return g;
}

std::string separating_expression(const GaussianInt& p, const BigInt& q,
                                  const std::string& var) {
  BigInt q2 = q * q;
  BigInt tr = q * p.twice_real();
  BigInt nm = p.norm();
  std::string expr = "(" + q2.get_str() + ")*" + var + "^2";
  expr += "-(" + tr.get_str() + ")*" + var;
  expr += "+(" + nm.get_str() + ")";
  return expr;
}

GeometricResolution load_resolution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return resolution_from_json(ss.str());
}

// Resolves the square subsystem either from a cache file or by solving.
GeometricResolution resolve_prefix(const Slp& system, const std::string& cache,
                                   uint64_t seed, int retries, json* levels_out) {
  if (!cache.empty()) return load_resolution(cache);
  SolveOptions opts;
  opts.seed = seed;
  opts.retries = retries;
  SolveResult r = solve_system(system, opts);
  if (levels_out) *levels_out = levels_to_json(r);
  return r.resolution;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric solving of polynomial systems with exact certificates"};
  app.require_subcommand(1);

  uint64_t seed = 0;
  int retries = 25;
  bool seed_set = false, retries_set = false;
  app.add_flag_callback("--version", [] { std::cout << "geosolve 1.0\n"; std::exit(0); });
  auto* seed_opt = app.add_option("--seed", seed, "seed for every randomized choice");
  auto* retries_opt = app.add_option("--retries", retries, "retry budget");

  std::string path, out_path, res_path;
  bool do_validate = false;
  std::string p_str, q_str = "1", eps_str = "1";

  auto add_common = [&](CLI::App* cmd, bool with_resolution) {
    cmd->add_option("file", path, "system file (JSON)")->required();
    cmd->add_option("--out", out_path, "write the JSON result to a file");
    if (with_resolution)
      cmd->add_option("--resolution", res_path, "reuse a solved resolution (JSON file)");
  };

  auto* c_solve = app.add_subcommand("solve", "geometric solution of a square system");
  add_common(c_solve, false);
  c_solve->add_flag("--validate", do_validate, "include the validation report");

  auto* c_cons = app.add_subcommand("consistency", "decide solvability of n+1 equations");
  add_common(c_cons, false);

  auto* c_wit = app.add_subcommand("witness", "certificate for an inconsistent system");
  add_common(c_wit, true);

  auto* c_lio = app.add_subcommand("liouville", "certified approximation bound");
  add_common(c_lio, true);
  c_lio->add_option("--p", p_str, "Gaussian-integer numerator")->required();
  c_lio->add_option("--q", q_str, "natural denominator")->required();
  c_lio->add_option("--epsilon", eps_str, "approximation level (rational, <= 1)")->required();

  auto* c_val = app.add_subcommand("validate", "check a resolution against a system");
  add_common(c_val, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  seed_set = seed_opt->count() > 0;
  retries_set = retries_opt->count() > 0;

  try {
    SystemFile f = read_system_file(path);
    if (seed_set) f.seed = seed;
    if (retries_set) f.retries = retries;
    const int n = (int)f.variables.size();

    if (app.got_subcommand(c_solve)) {
      if ((int)f.equations.size() < n)
        throw std::runtime_error("solve needs at least n equations");
      Slp system = parse_system(f.equations, f.variables);
      if ((int)system.num_outputs() > n + 1)
        system = reduce_system(system, 8, f.seed);
      SolveOptions opts{f.seed, f.retries};
      SolveResult r = solve_system(system, opts);
      json j;
      j["resolution"] = json::parse(resolution_to_json(r.resolution));
      j["levels"] = levels_to_json(r);
      json change = json::array();
      for (const auto& row : r.change) {
        json jr = json::array();
        for (const auto& x : row) jr.push_back(x.get_str());
        change.push_back(jr);
      }
      j["change"] = change;
      j["attempts"] = r.attempts;
      if (do_validate)
        j["validation"] = validation_to_json(
            validate_resolution(r.resolution, take_outputs(system, n)));
      std::cerr << "solved: degree " << r.resolution.degree() << ", "
                << r.levels.size() << " levels, " << r.attempts << " attempt(s)\n";
      emit(j.dump(2), out_path);
      return 0;
    }

    if (app.got_subcommand(c_cons)) {
      if ((int)f.equations.size() < n + 1)
        throw std::runtime_error("consistency needs n+1 equations");
      Slp system = parse_system(f.equations, f.variables);
      if ((int)system.num_outputs() > n + 1) system = reduce_system(system, 8, f.seed);
      SolveOptions opts{f.seed, f.retries};
      ConsistencyVerdict v = decide_consistency(system, opts);
      json j;
      j["consistent"] = v.consistent;
      json cert;
      cert["det"] = rat_to_string(v.det);
      if (v.kernel) cert["resolution"] = json::parse(resolution_to_json(*v.kernel));
      j["certificate"] = cert;
      std::cerr << (v.consistent ? "consistent" : "inconsistent") << " (det = "
                << rat_to_string(v.det) << ")\n";
      emit(j.dump(2), out_path);
      return 0;
    }

    if (app.got_subcommand(c_wit)) {
      if ((int)f.equations.size() < n + 1)
        throw std::runtime_error("witness needs n+1 equations");
      Slp system = parse_system(f.equations, f.variables);
      GeometricResolution res =
          resolve_prefix(system, res_path, f.seed, f.retries, nullptr);
      BezoutWitness w = bezout_witness(res, system, n);
      std::cerr << "witness a = " << w.a.get_str() << "\n";
      emit(witness_to_json(w), out_path);
      return 0;
    }

    if (app.got_subcommand(c_lio)) {
      BigRat eps = rat_from_string(eps_str);
      if (eps > 1 || eps <= 0) {
        std::cerr << "error: epsilon must be in (0, 1]\n";
        return 1;
      }
      if ((int)f.equations.size() < n)
        throw std::runtime_error("liouville needs the n defining equations");
      GaussianInt p = parse_gaussian(p_str);
      BigInt q(q_str);
      if (q < 1) {
        std::cerr << "error: q must be >= 1\n";
        return 1;
      }
      std::vector<std::string> eqs(f.equations.begin(), f.equations.begin() + n);
      eqs.push_back(separating_expression(p, q, f.variables[0]));
      Slp system = parse_system(eqs, f.variables);
      GeometricResolution res =
          resolve_prefix(system, res_path, f.seed, f.retries, nullptr);
      BezoutWitness w = bezout_witness(res, system, n);
      ApproximationQuery query;
      query.numerators = {p};
      query.denominator = q;
      query.epsilon = eps;
      BoundReport rep = certified_denominator_bound(query, w, res);
      json j = json::parse(bound_report_to_json(rep));
      j["witness"] = json::parse(witness_to_json(w));
      std::cerr << "certified: log2(q) >= "
                << rat_to_string(rep.log2_denominator_bound) << "\n";
      emit(j.dump(2), out_path);
      return 0;
    }

    if (app.got_subcommand(c_val)) {
      if (res_path.empty()) throw std::runtime_error("validate needs --resolution");
      Slp system = parse_system(f.equations, f.variables);
      GeometricResolution res = load_resolution(res_path);
      ValidationReport rep = validate_resolution(res, system);
      emit(validation_to_json(rep).dump(2), out_path);
      return rep.ok() ? 0 : 2;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const SolveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const LiftError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
