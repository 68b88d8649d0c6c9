#include "sepvar/cli.hpp"

#include "sepvar/families.hpp"
#include "sepvar/fiber.hpp"
#include "sepvar/json_io.hpp"
#include "sepvar/linear_system.hpp"
#include "sepvar/nonlinear_system.hpp"
#include "sepvar/poisson.hpp"
#include "sepvar/verify.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace sepvar::cli {

namespace {

constexpr const char* kFamilyHelp =
    "Family parameter blocks (flags or --params JSON):\n"
    "  lagrange     {\"n\": 3}\n"
    "  sparse       {\"exponents\": [-1, 0, 2]}\n"
    "  plane-curve  {\"monomials\": [[1,1],[2,0]], \"rhs\": <LaurentPoly2 JSON>}\n"
    "  weierstrass  {\"w_n\": 2, \"w_s\": 3}\n"
    "  hermite      {\"n\": 3, \"orders\": [0, 1, 2]}\n";

struct Inputs {
  std::string hash_source; // bytes of every input read, in order
  std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    hash_source += ss.str();
    return ss.str();
  }
  Json json_file(const std::string& path) { return parse(read(path), path); }
  // Inline JSON when the argument starts with '[' or '{', a file path otherwise.
  Json json_arg(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '[' || arg.front() == '{')) {
      hash_source += arg;
      return parse(arg, "argument");
    }
    return json_file(arg);
  }
  static Json parse(const std::string& text, const std::string& where) {
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw InputError("invalid JSON in " + where + ": " + e.what());
    }
  }
  std::string hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : hash_source) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }
};

struct RunConfig {
  std::string command;
  std::string mode = "rational";
  double tol = 1e-9;
  std::uint64_t seed = 0;
};

Json config_echo(const RunConfig& cfg, const Inputs& inputs) {
  return Json{{"command", cfg.command},
              {"mode", cfg.mode},
              {"tol", cfg.tol},
              {"seed", cfg.seed},
              {"input_hash", "fnv1a64:" + inputs.hash()},
              {"simd", std::string(kernels::name(kernels::active_backend()))}};
}

void emit(const Json& doc, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << doc.dump(2) << '\n';
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << doc.dump(2) << '\n';
}

std::vector<double> guess_from(Inputs& inputs, const std::string& arg, std::size_t n) {
  if (arg.empty()) return std::vector<double>(n, 0.0);
  Json j = inputs.json_arg(arg);
  if (j.is_object() && j.contains("guess")) j = j.at("guess");
  auto g = scalars_from_json<double>(j);
  if (g.size() != n) throw DimensionMismatch("guess has " + std::to_string(g.size()) + " entries");
  return g;
}

PoissonStructure structure_from(Inputs& inputs, const std::string& arg, std::size_t n) {
  PoissonStructure ps;
  if (parse_structure_shorthand(arg, n, ps)) return ps;
  ps = structure_from_json(inputs.json_arg(arg));
  if (ps.n() != n) throw DimensionMismatch("structure has " + std::to_string(ps.n()) + " weights, expected " + std::to_string(n));
  return ps;
}

// Linear or nonlinear system, solved at the given points, with rank data.
template <class S>
struct Solved {
  SolutionWithJacobian<S> sol;
  RankReport rank;
  Json residuals;
};

struct Problem {
  Json doc;
  bool nonlinear = false;
  std::optional<LinearSeparationSystem> linear;
  std::optional<NonlinearSeparationSystem> general;
  std::size_t n() const { return nonlinear ? general->n() : linear->n(); }
};

Problem load_problem(Inputs& inputs, const std::string& path) {
  Problem p;
  p.doc = inputs.json_file(path);
  p.nonlinear = is_nonlinear_system(p.doc);
  if (p.nonlinear)
    p.general = nonlinear_system_from_json(p.doc);
  else
    p.linear = linear_system_from_json(p.doc);
  return p;
}

template <class S>
Solved<S> solve_problem(const Problem& p, const PointConfiguration<S>& pts, const std::vector<double>& guess) {
  Solved<S> s;
  if (!p.nonlinear) {
    s.rank = rank_report(*p.linear, pts);
    s.sol = solve(*p.linear, pts);
    s.residuals = to_json(residuals(*p.linear, pts, s.sol.H));
    return s;
  }
  if constexpr (is_exact_v<S>) {
    throw InputError("nonlinear systems are solved by Newton iteration; use --mode float64");
  } else {
    NewtonResult root = newton_solve(*p.general, pts, guess);
    s.rank = rank_report(*p.general, pts, root.H);
    s.sol = {root.H, implicit_jacobian(*p.general, pts, root.H)};
    std::vector<double> res;
    for (std::size_t i = 0; i < p.n(); ++i) res.push_back(residual_eval(p.general->residual(i), root.H, pts.a[i], pts.b[i]));
    s.residuals = to_json(res);
    return s;
  }
}

template <class S>
int do_solve(const Problem& p, Inputs& inputs, const std::string& points_path, const std::string& guess_arg,
             const RunConfig& cfg, const std::string& out_path, std::ostream& out) {
  auto pts = points_from_json<S>(inputs.json_file(points_path));
  pts.check(p.n());
  auto guess = p.nonlinear ? guess_from(inputs, guess_arg, p.n()) : std::vector<double>{};
  Solved<S> s = solve_problem(p, pts, guess);
  Json doc{{"config", config_echo(cfg, inputs)},
           {"solution", to_json(s.sol)},
           {"residuals", s.residuals},
           {"rank", to_json(s.rank)}};
  emit(doc, out_path, out);
  return kPass;
}

template <class S>
int do_verify(const Problem& p, Inputs& inputs, const std::string& points_path, const std::string& structure_arg,
              const std::string& guess_arg, const RunConfig& cfg, const std::string& out_path, std::ostream& out,
              std::ostream& err) {
  auto pts = points_from_json<S>(inputs.json_file(points_path));
  pts.check(p.n());
  PoissonStructure ps = structure_from(inputs, structure_arg, p.n());
  auto guess = p.nonlinear ? guess_from(inputs, guess_arg, p.n()) : std::vector<double>{};

  Json doc{{"config", config_echo(cfg, inputs)}, {"structure", ps.id()}};
  // The gate needs only the rank data, so a rank-deficient linear configuration
  // is reported before any solve is attempted.
  if (!p.nonlinear) {
    RankReport rank = rank_report(*p.linear, pts);
    doc["rank"] = to_json(rank);
    try {
      check_hypothesis_gate(ps, pts, rank);
    } catch (const HypothesisViolated& e) {
      doc["error"] = Json{{"kind", "HypothesisViolated"}, {"slot", e.slot() + 1}, {"message", e.what()}};
      doc["pass"] = false;
      emit(doc, out_path, out);
      err << "error: " << e.what() << '\n';
      return kVerificationFailed;
    }
  }

  Solved<S> s = solve_problem(p, pts, guess);
  doc["rank"] = to_json(s.rank);
  doc["solution"] = to_json(s.sol);
  bool pass = true;
  try {
    auto comm = check_commutation(s.sol, ps, pts, s.rank, cfg.tol);
    doc["commutation"] = to_json(comm);
    pass = pass && comm.pass;
  } catch (const HypothesisViolated& e) {
    doc["error"] = Json{{"kind", "HypothesisViolated"}, {"slot", e.slot() + 1}, {"message", e.what()}};
    err << "error: " << e.what() << '\n';
    pass = false;
  }
  Json prop1 = Json::array();
  for (std::size_t k = 0; k < p.n(); ++k) {
    auto r = check_prop1(s.sol, s.rank, k, cfg.tol);
    prop1.push_back(to_json(r));
    if (r.hypothesis_ok) pass = pass && r.pass;
  }
  doc["prop1"] = std::move(prop1);
  doc["pass"] = pass;
  emit(doc, out_path, out);
  return pass ? kPass : kVerificationFailed;
}

struct FamilyArgs {
  std::string name;
  std::string params;
  int n = 0;
  std::vector<int> exponents;
  std::vector<int> orders;
  int w_n = 0;
  int w_s = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", n, "system size (lagrange, hermite)");
    cmd->add_option("--exponents", exponents, "distinct exponents (sparse)")->delimiter(',');
    cmd->add_option("--orders", orders, "derivative order per row (hermite)")->delimiter(',');
    cmd->add_option("--wn", w_n, "Weierstrass w_n");
    cmd->add_option("--ws", w_s, "Weierstrass w_s");
    cmd->add_option("--params", params, "JSON parameter block, inline or a file path");
  }

  FamilySpec spec(Inputs& inputs) const {
    Json block = Json::object();
    if (!params.empty()) block = inputs.json_arg(params);
    if (n != 0) block["n"] = n;
    if (!exponents.empty()) block["exponents"] = exponents;
    if (!orders.empty()) block["orders"] = orders;
    if (w_n != 0) block["w_n"] = w_n;
    if (w_s != 0) block["w_s"] = w_s;
    return family_from_json(name, block);
  }
};

Window parse_window(const std::vector<double>& v) {
  if (v.size() != 4) throw InputError("--window takes x_min,x_max,y_min,y_max");
  return {v[0], v[1], v[2], v[3]};
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Commuting Hamiltonians from separation relations: build, solve, verify, fuzz, sample fibers."};
  app.require_subcommand(1);
  app.footer(std::string(kFamilyHelp) +
             "\nExit codes: 0 pass, 1 verification failed, 2 usage error, 3 numeric failure.\n"
             "SEPVAR_THREADS caps fuzz parallelism; SEPVAR_SIMD=scalar|avx2 pins the kernel backend.");

  RunConfig cfg;
  std::string sys_path, points_path, structure = "canonical", guess_arg, out_path, h_arg;
  std::size_t trials = 0, slot = 0, res = 0;
  std::vector<double> window;
  std::string format;

  FamilyArgs fam;
  auto* family_cmd = app.add_subcommand("family", "write the separation system of a family");
  family_cmd->add_option("name", fam.name, "lagrange | sparse | plane-curve | weierstrass | hermite")->required();
  fam.attach(family_cmd);
  family_cmd->add_option("--out", out_path, "output path (default stdout)");
  family_cmd->footer(kFamilyHelp);

  auto* solve_cmd = app.add_subcommand("solve", "solve a system at a point configuration");
  solve_cmd->add_option("--sys", sys_path, "system JSON")->required();
  solve_cmd->add_option("--points", points_path, "points JSON")->required();
  solve_cmd->add_option("--mode", cfg.mode, "rational | float64");
  solve_cmd->add_option("--guess", guess_arg, "Newton initial guess for nonlinear systems (JSON array or file)");
  solve_cmd->add_option("--out", out_path, "output path (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "commutation and gradient-relation checks");
  verify_cmd->add_option("--sys", sys_path, "system JSON")->required();
  verify_cmd->add_option("--points", points_path, "points JSON")->required();
  verify_cmd->add_option("--structure", structure, "canonical | slot:k | structure JSON file");
  verify_cmd->add_option("--mode", cfg.mode, "rational | float64");
  verify_cmd->add_option("--tol", cfg.tol, "float tolerance (default 1e-9)");
  verify_cmd->add_option("--guess", guess_arg, "Newton initial guess for nonlinear systems");
  verify_cmd->add_option("--out", out_path, "output path (default stdout)");

  FamilyArgs fuzz_fam;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "seeded randomized verification of a family");
  fuzz_cmd->add_option("--family", fuzz_fam.name, "family name")->required();
  fuzz_fam.attach(fuzz_cmd);
  fuzz_cmd->add_option("--trials", trials, "number of configurations")->required();
  fuzz_cmd->add_option("--seed", cfg.seed, "generator seed (default 0)");
  fuzz_cmd->add_option("--mode", cfg.mode, "rational | float64");
  fuzz_cmd->add_option("--tol", cfg.tol, "float tolerance (default 1e-9)");
  fuzz_cmd->add_option("--out", out_path, "output path (default stdout)");

  auto* fiber_cmd = app.add_subcommand("fiber", "sample one factor curve of a level set");
  fiber_cmd->add_option("--sys", sys_path, "system JSON")->required();
  fiber_cmd->add_option("--H", h_arg, "Hamiltonian values (JSON array, {\"H\": [...]} or file)")->required();
  fiber_cmd->add_option("--slot", slot, "separation slot, 1-based")->required();
  fiber_cmd->add_option("--window", window, "x_min,x_max,y_min,y_max")->delimiter(',')->required();
  fiber_cmd->add_option("--res", res, "number of x columns (>= 2)")->required();
  fiber_cmd->add_option("--format", format, "csv | json (default: from --out extension, else csv)");
  fiber_cmd->add_option("--out", out_path, "output path (default stdout)");

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      out << app.help() << '\n';
      return kPass;
    } catch (const CLI::CallForAllHelp& e) {
      out << app.help("", CLI::AppFormatMode::All) << '\n';
      return kPass;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << '\n';
      return kUsageError;
    }

    Inputs inputs;
    if (*family_cmd) {
      cfg.command = "family";
      FamilySpec spec = fam.spec(inputs);
      Json doc = to_json(build(spec));
      doc["family"] = spec.describe();
      if (spec.name == "weierstrass") doc["weierstrass"] = to_json(weierstrass_spec(spec.w_n, spec.w_s));
      emit(doc, out_path, out);
      return kPass;
    }
    if (*solve_cmd || *verify_cmd) {
      cfg.command = *solve_cmd ? "solve" : "verify";
      Mode mode = parse_mode(cfg.mode);
      cfg.mode = mode_name(mode);
      Problem p = load_problem(inputs, sys_path);
      if (*solve_cmd)
        return mode == Mode::Rational ? do_solve<Rational>(p, inputs, points_path, guess_arg, cfg, out_path, out)
                                      : do_solve<double>(p, inputs, points_path, guess_arg, cfg, out_path, out);
      return mode == Mode::Rational
                 ? do_verify<Rational>(p, inputs, points_path, structure, guess_arg, cfg, out_path, out, err)
                 : do_verify<double>(p, inputs, points_path, structure, guess_arg, cfg, out_path, out, err);
    }
    if (*fuzz_cmd) {
      cfg.command = "fuzz";
      Mode mode = parse_mode(cfg.mode);
      cfg.mode = mode_name(mode);
      FamilySpec spec = fuzz_fam.spec(inputs);
      FuzzOptions opts{trials, cfg.seed, mode, cfg.tol, 0};
      FuzzReport report = fuzz(spec, opts);
      Json doc{{"config", config_echo(cfg, inputs)}, {"report", to_json(report)}};
      emit(doc, out_path, out);
      return report.pass ? kPass : kVerificationFailed;
    }
    if (*fiber_cmd) {
      cfg.command = "fiber";
      cfg.mode = "float64";
      Problem p = load_problem(inputs, sys_path);
      Json hj = inputs.json_arg(h_arg);
      if (hj.is_object() && hj.contains("H")) hj = hj.at("H");
      if (hj.is_object() && hj.contains("solution")) hj = hj.at("solution").at("H");
      std::vector<double> h = scalars_from_json<double>(hj);
      if (slot == 0 || slot > p.n()) throw InputError("--slot must be in 1.." + std::to_string(p.n()));
      Window w = parse_window(window);
      FiberCurveSample sample = p.nonlinear ? sample_fiber(*p.general, h, slot - 1, w, res)
                                            : sample_fiber(*p.linear, h, slot - 1, w, res);
      if (format.empty())
        format = out_path.size() >= 5 && out_path.substr(out_path.size() - 5) == ".json" ? "json" : "csv";
      if (format != "csv" && format != "json") throw InputError("--format must be csv or json");
      if (sample.skipped_columns > 0)
        err << "warning: skipped " << sample.skipped_columns << " non-polynomial column(s)\n";
      if (format == "json") {
        Json doc{{"config", config_echo(cfg, inputs)}, {"sample", to_json(sample)}};
        emit(doc, out_path, out);
      } else if (out_path.empty() || out_path == "-") {
        write_csv(out, sample);
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw InputError("cannot write '" + out_path + "'");
        write_csv(f, sample);
      }
      return kPass;
    }
  } catch (const HypothesisViolated& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

} // namespace sepvar::cli
