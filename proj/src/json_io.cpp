#include "sepvar/json_io.hpp"

#include <cmath>

namespace sepvar {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing JSON field \"") + key + "\"");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer()) throw InputError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

std::vector<int> int_list(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_array()) throw InputError(std::string("field \"") + key + "\" must be an array of integers");
  std::vector<int> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) throw InputError(std::string("field \"") + key + "\" must hold integers");
    out.push_back(e.get<int>());
  }
  return out;
}

} // namespace

Json to_json(const Rational& r) { return Json(to_string(r)); }

Json to_json(const LaurentPoly2& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(Json{{"ex", e.x}, {"ey", e.y}, {"c", to_string(c)}});
  return Json{{"terms", std::move(terms)}};
}

Json to_json(const LinearSeparationSystem& sys) {
  Json rows = Json::array();
  for (const auto& row : sys.rows()) {
    Json basis = Json::array();
    for (const auto& f : row.basis) basis.push_back(to_json(f));
    rows.push_back(Json{{"basis", std::move(basis)}, {"rhs", to_json(row.rhs)}});
  }
  return Json{{"n", sys.n()}, {"rows", std::move(rows)}};
}

Json to_json(const MultiPoly& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms())
    terms.push_back(Json{{"h", e.h}, {"ex", e.x}, {"ey", e.y}, {"c", to_string(c)}});
  return Json{{"num_h", f.num_h()}, {"terms", std::move(terms)}};
}

Json to_json(const NonlinearSeparationSystem& sys) {
  Json res = Json::array();
  for (const auto& f : sys.residuals()) res.push_back(to_json(f));
  return Json{{"n", sys.n()}, {"residuals", std::move(res)}};
}

Json to_json(const PoissonStructure& ps) {
  Json w = Json::array();
  for (const auto& p : ps.weights()) w.push_back(to_json(p));
  return Json{{"weights", std::move(w)}};
}

Json to_json(const WeierstrassSpec& spec) {
  Json groups = Json::array();
  for (const auto& members : spec.monomials) {
    Json g = Json::array();
    for (const auto& m : members) g.push_back(Json::array({m.x, m.y}));
    groups.push_back(std::move(g));
  }
  return Json{{"w_n", spec.w_n}, {"w_s", spec.w_s}, {"d", spec.d()}, {"q_list", spec.q_list}, {"monomials", groups}};
}

Json to_json(const RankReport& r) {
  return Json{{"full_rank", r.full_rank}, {"rank", r.rank}, {"deleted_row_ranks", r.deleted_row_ranks}};
}

Json to_json(const FuzzReport& r) {
  return Json{{"family", r.family},
              {"mode", mode_name(r.mode)},
              {"seed", r.seed},
              {"tol", r.tol},
              {"trials", r.trials},
              {"draws", r.draws},
              {"singular_draws", r.singular_draws},
              {"commutation_checks", r.commutation_checks},
              {"commutation_failures", r.commutation_failures},
              {"prop1_checks", r.prop1_checks},
              {"prop1_failures", r.prop1_failures},
              {"worst_bracket", r.worst_bracket},
              {"worst_prop1", r.worst_prop1},
              {"pass", r.pass}};
}

Json to_json(const FiberCurveSample& s) {
  Json pts = Json::array();
  for (const auto& p : s.points) pts.push_back(Json{{"x", p.x}, {"y", p.y}, {"residual", p.residual}});
  return Json{{"index", s.index + 1},
              {"window", Json::array({s.window.x_min, s.window.x_max, s.window.y_min, s.window.y_max})},
              {"residual_bound", s.residual_bound},
              {"skipped_columns", s.skipped_columns},
              {"points", std::move(pts)}};
}

std::string mode_name(Mode m) { return m == Mode::Rational ? "rational" : "float64"; }

Mode parse_mode(const std::string& text) {
  if (text == "rational") return Mode::Rational;
  if (text == "float64" || text == "float") return Mode::Float64;
  throw InputError("unknown mode '" + text + "' (expected rational or float64)");
}

LaurentPoly2 laurent_from_json(const Json& j) {
  LaurentPoly2 p;
  const Json& terms = require(j, "terms");
  if (!terms.is_array()) throw InputError("\"terms\" must be an array");
  for (const auto& t : terms) {
    const Json& c = require(t, "c");
    if (!c.is_string()) throw InputError("coefficients must be \"num/den\" strings");
    p.add_term(int_field(t, "ex"), int_field(t, "ey"), parse_rational(c.get<std::string>()));
  }
  return p;
}

LinearSeparationSystem linear_system_from_json(const Json& j) {
  const int n = int_field(j, "n");
  const Json& rows = require(j, "rows");
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n))
    throw DimensionMismatch("\"rows\" must list n = " + std::to_string(n) + " rows");
  std::vector<SeparationRow> out;
  for (const auto& r : rows) {
    SeparationRow row;
    const Json& basis = require(r, "basis");
    if (!basis.is_array()) throw InputError("\"basis\" must be an array");
    for (const auto& f : basis) row.basis.push_back(laurent_from_json(f));
    row.rhs = laurent_from_json(require(r, "rhs"));
    out.push_back(std::move(row));
  }
  return LinearSeparationSystem(std::move(out));
}

MultiPoly multipoly_from_json(const Json& j) {
  const int num_h = int_field(j, "num_h");
  if (num_h <= 0) throw InputError("\"num_h\" must be positive");
  MultiPoly f(static_cast<std::size_t>(num_h));
  const Json& terms = require(j, "terms");
  if (!terms.is_array()) throw InputError("\"terms\" must be an array");
  for (const auto& t : terms) {
    const Json& c = require(t, "c");
    if (!c.is_string()) throw InputError("coefficients must be \"num/den\" strings");
    f.add_term(int_list(t, "h"), int_field(t, "ex"), int_field(t, "ey"), parse_rational(c.get<std::string>()));
  }
  return f;
}

NonlinearSeparationSystem nonlinear_system_from_json(const Json& j) {
  const Json& res = require(j, "residuals");
  if (!res.is_array()) throw InputError("\"residuals\" must be an array");
  std::vector<MultiPoly> out;
  for (const auto& r : res) out.push_back(multipoly_from_json(r));
  if (j.contains("n") && int_field(j, "n") != static_cast<int>(out.size()))
    throw DimensionMismatch("\"n\" disagrees with the number of residuals");
  return NonlinearSeparationSystem(std::move(out));
}

bool is_nonlinear_system(const Json& j) { return j.is_object() && j.contains("residuals"); }

PoissonStructure structure_from_json(const Json& j) {
  const Json& w = require(j, "weights");
  if (!w.is_array()) throw InputError("\"weights\" must be an array");
  std::vector<LaurentPoly2> weights;
  for (const auto& p : w) weights.push_back(laurent_from_json(p));
  return PoissonStructure(std::move(weights), "custom");
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(j.dump(), 10));
  if (j.is_number_float())
    throw InputError("rational mode rejects decimal scalar " + j.dump() + "; write it as \"num/den\"");
  throw InputError("expected a rational scalar, got " + j.dump());
}

double float_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
  throw InputError("expected a numeric scalar, got " + j.dump());
}

FamilySpec family_from_json(const std::string& name, const Json& params) {
  if (name == "lagrange") {
    int n = int_field(params, "n");
    if (n <= 0) throw InputError("lagrange: n must be positive");
    return FamilySpec::make_lagrange(static_cast<std::size_t>(n));
  }
  if (name == "sparse") return FamilySpec::make_sparse(int_list(params, "exponents"));
  if (name == "plane-curve") {
    const Json& mons = require(params, "monomials");
    if (!mons.is_array()) throw InputError("\"monomials\" must be an array of [p, q] pairs");
    std::vector<Exponent2> monomials;
    for (const auto& m : mons) {
      if (!m.is_array() || m.size() != 2 || !m[0].is_number_integer() || !m[1].is_number_integer())
        throw InputError("each monomial must be an integer pair [p, q]");
      monomials.push_back({m[0].get<int>(), m[1].get<int>()});
    }
    return FamilySpec::make_plane_curve(std::move(monomials), laurent_from_json(require(params, "rhs")));
  }
  if (name == "weierstrass") return FamilySpec::make_weierstrass(int_field(params, "w_n"), int_field(params, "w_s"));
  if (name == "hermite") {
    int n = int_field(params, "n");
    if (n <= 0) throw InputError("hermite: n must be positive");
    return FamilySpec::make_hermite(static_cast<std::size_t>(n), int_list(params, "orders"));
  }
  throw InputError("unknown family '" + name + "' (lagrange, sparse, plane-curve, weierstrass, hermite)");
}

} // namespace sepvar
