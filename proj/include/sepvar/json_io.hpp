#pragma once

// JSON forms of systems, points, structures and reports. Exact scalars travel
// as "num/den" strings, float scalars as JSON numbers.

#include "sepvar/families.hpp"
#include "sepvar/fiber.hpp"
#include "sepvar/laurent_poly.hpp"
#include "sepvar/linear_system.hpp"
#include "sepvar/nonlinear_system.hpp"
#include "sepvar/poisson.hpp"
#include "sepvar/verify.hpp"

#include <json.hpp>

#include <string>

namespace sepvar {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
inline Json to_json(double x) { return Json(x); }
Json to_json(const LaurentPoly2& p);
Json to_json(const LinearSeparationSystem& sys);
Json to_json(const MultiPoly& f);
Json to_json(const NonlinearSeparationSystem& sys);
Json to_json(const PoissonStructure& ps);
Json to_json(const WeierstrassSpec& spec);
Json to_json(const RankReport& r);
Json to_json(const FuzzReport& r);
Json to_json(const FiberCurveSample& s);

template <class S>
Json to_json(const std::vector<S>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

template <class S>
Json to_json(const Matrix<S>& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

template <class S>
Json to_json(const PointConfiguration<S>& pts) {
  return Json{{"a", to_json(pts.a)}, {"b", to_json(pts.b)}};
}

template <class S>
Json to_json(const SolutionWithJacobian<S>& sol) {
  return Json{{"H", to_json(sol.H)}, {"jac", to_json(sol.jac)}};
}

template <class S>
Json to_json(const Prop1Report<S>& r) {
  Json out{{"k", r.k + 1},
           {"hypothesis_ok", r.hypothesis_ok},
           {"b_column_nonzero", r.b_column_nonzero},
           {"M_k", r.M_k ? to_json(*r.M_k) : Json(nullptr)},
           {"pivot_j_k", r.pivot_j_k ? Json(*r.pivot_j_k + 1) : Json(nullptr)},
           {"A_ratios", r.A_ratios ? to_json(*r.A_ratios) : Json(nullptr)},
           {"proportionality_residual", to_json(r.proportionality_residual)},
           {"ratio_residual", to_json(r.ratio_residual)},
           {"max_minor", to_json(r.max_minor)},
           {"ratio_mismatch", r.ratio_mismatch ? to_json(*r.ratio_mismatch) : Json(nullptr)},
           {"max_residual", to_json(r.max_residual)},
           {"pass", r.pass}};
  return out;
}

std::string mode_name(Mode m);
Mode parse_mode(const std::string& text);

template <class S>
Json to_json(const CommutationReport<S>& r) {
  return Json{{"max_abs_bracket", to_json(r.max_abs_bracket)},
              {"pairs_checked", r.pairs_checked},
              {"structure_id", r.structure_id},
              {"mode", mode_name(r.mode)},
              {"tol", r.tol},
              {"pass", r.pass},
              {"brackets", to_json(r.brackets)}};
}

LaurentPoly2 laurent_from_json(const Json& j);
LinearSeparationSystem linear_system_from_json(const Json& j);
MultiPoly multipoly_from_json(const Json& j);
NonlinearSeparationSystem nonlinear_system_from_json(const Json& j);
/// True when the document describes a nonlinear system (has "residuals").
bool is_nonlinear_system(const Json& j);
PoissonStructure structure_from_json(const Json& j);

/// Rational mode accepts "p/q" strings and JSON integers and rejects JSON
/// floats; float mode accepts numbers and "p/q" strings.
Rational rational_from_json(const Json& j);
double float_from_json(const Json& j);

template <class S>
S scalar_from_json(const Json& j) {
  if constexpr (std::is_same_v<S, double>)
    return float_from_json(j);
  else
    return rational_from_json(j);
}

template <class S>
std::vector<S> scalars_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of scalars");
  std::vector<S> out;
  for (const auto& v : j) out.push_back(scalar_from_json<S>(v));
  return out;
}

template <class S>
PointConfiguration<S> points_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b")) throw InputError("points JSON needs \"a\" and \"b\"");
  PointConfiguration<S> pts{scalars_from_json<S>(j.at("a")), scalars_from_json<S>(j.at("b"))};
  if (pts.a.size() != pts.b.size()) throw DimensionMismatch("\"a\" and \"b\" differ in length");
  return pts;
}

/// Family parameter block as accepted by `sepvar family` / `sepvar fuzz`.
FamilySpec family_from_json(const std::string& name, const Json& params);

} // namespace sepvar
