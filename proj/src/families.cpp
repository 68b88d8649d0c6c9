#include "sepvar/families.hpp"

#include "sepvar/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace sepvar {

namespace {

LinearSeparationSystem shared_rows(const std::vector<LaurentPoly2>& basis, const LaurentPoly2& rhs) {
  std::vector<SeparationRow> rows(basis.size(), SeparationRow{basis, rhs});
  return LinearSeparationSystem(std::move(rows));
}

} // namespace

LinearSeparationSystem lagrange(std::size_t n) {
  if (n == 0) throw InputError("lagrange: n must be positive");
  std::vector<LaurentPoly2> basis;
  for (std::size_t j = 0; j < n; ++j) basis.push_back(LaurentPoly2::x_pow(static_cast<int>(j)));
  return shared_rows(basis, LaurentPoly2::y_pow(1));
}

LinearSeparationSystem sparse_poly(const std::vector<int>& exponents) {
  if (exponents.empty()) throw InputError("sparse: at least one exponent is required");
  if (std::set<int>(exponents.begin(), exponents.end()).size() != exponents.size()) throw DuplicateExponents();
  std::vector<LaurentPoly2> basis;
  for (int e : exponents) basis.push_back(LaurentPoly2::x_pow(e));
  return shared_rows(basis, LaurentPoly2::y_pow(1));
}

LinearSeparationSystem plane_curve(const std::vector<Exponent2>& monomials, const LaurentPoly2& rhs) {
  if (monomials.empty()) throw InputError("plane-curve: at least one monomial is required");
  if (std::set<Exponent2>(monomials.begin(), monomials.end()).size() != monomials.size())
    throw DuplicateMonomials();
  for (const auto& m : monomials)
    if (m.x < 0 || m.y < 0) throw InputError("plane-curve: monomial exponents must be nonnegative");
  std::vector<LaurentPoly2> basis;
  for (const auto& m : monomials) basis.push_back(LaurentPoly2::monomial(m.x, m.y));
  return shared_rows(basis, rhs);
}

WeierstrassSpec weierstrass_spec(int w_n, int w_s) {
  if (w_n < 2 || w_s < 2 || std::gcd(w_n, w_s) != 1) throw NotCoprime(w_n, w_s);
  // q > 0 forces i < w_s and j < w_n, so the box below is exhaustive.
  std::map<int, std::vector<Exponent2>> groups;
  for (int j = 0; j < w_n; ++j)
    for (int i = 0; i < w_s; ++i) {
      int q = w_n * w_s - w_n * i - w_s * j;
      if (q > 0) groups[q].push_back({i, j});
    }
  WeierstrassSpec spec{w_n, w_s, {}, {}};
  for (auto& [q, members] : groups) {
    spec.q_list.push_back(q);
    spec.monomials.push_back(std::move(members));
  }
  return spec;
}

std::pair<LinearSeparationSystem, WeierstrassSpec> weierstrass(int w_n, int w_s) {
  WeierstrassSpec spec = weierstrass_spec(w_n, w_s);
  std::vector<LaurentPoly2> basis;
  for (const auto& members : spec.monomials) {
    LaurentPoly2 f;
    for (const auto& m : members) f += LaurentPoly2::monomial(m.x, m.y);
    basis.push_back(std::move(f));
  }
  LaurentPoly2 rhs = LaurentPoly2::y_pow(w_n) - LaurentPoly2::x_pow(w_s);
  return {shared_rows(basis, rhs), std::move(spec)};
}

LinearSeparationSystem hermite(std::size_t n, const std::vector<int>& orders) {
  if (n == 0) throw InputError("hermite: n must be positive");
  if (orders.size() != n)
    throw DimensionMismatch("hermite: " + std::to_string(orders.size()) + " orders for n = " + std::to_string(n));
  std::vector<SeparationRow> rows;
  for (std::size_t i = 0; i < n; ++i) {
    if (orders[i] < 0) throw InputError("hermite: derivative orders must be nonnegative");
    if (static_cast<std::size_t>(orders[i]) > n - 1) throw OrderTooHigh(i, orders[i], n);
    SeparationRow row;
    for (std::size_t j = 0; j < n; ++j)
      row.basis.push_back(poly_diff_x(LaurentPoly2::x_pow(static_cast<int>(j)), orders[i]));
    row.rhs = LaurentPoly2::y_pow(1);
    rows.push_back(std::move(row));
  }
  return LinearSeparationSystem(std::move(rows));
}

} // namespace sepvar

namespace sepvar {

FamilySpec FamilySpec::make_lagrange(std::size_t n) {
  FamilySpec s;
  s.name = "lagrange";
  s.n = n;
  return s;
}

FamilySpec FamilySpec::make_sparse(std::vector<int> exponents) {
  FamilySpec s;
  s.name = "sparse";
  s.exponents = std::move(exponents);
  return s;
}

FamilySpec FamilySpec::make_plane_curve(std::vector<Exponent2> monomials, LaurentPoly2 rhs) {
  FamilySpec s;
  s.name = "plane-curve";
  s.monomials = std::move(monomials);
  s.rhs = std::move(rhs);
  return s;
}

FamilySpec FamilySpec::make_weierstrass(int w_n, int w_s) {
  FamilySpec s;
  s.name = "weierstrass";
  s.w_n = w_n;
  s.w_s = w_s;
  return s;
}

FamilySpec FamilySpec::make_hermite(std::size_t n, std::vector<int> orders) {
  FamilySpec s;
  s.name = "hermite";
  s.n = n;
  s.orders = std::move(orders);
  return s;
}

namespace {

template <class Range, class Fn>
std::string join(const Range& r, Fn fn) {
  std::string out;
  for (const auto& v : r) {
    if (!out.empty()) out += ',';
    out += fn(v);
  }
  return out;
}

} // namespace

std::string FamilySpec::describe() const {
  auto int_str = [](int v) { return std::to_string(v); };
  if (name == "lagrange") return "lagrange(" + std::to_string(n) + ")";
  if (name == "sparse") return "sparse(" + join(exponents, int_str) + ")";
  if (name == "weierstrass") return "weierstrass(" + std::to_string(w_n) + "," + std::to_string(w_s) + ")";
  if (name == "hermite") return "hermite(" + std::to_string(n) + ";" + join(orders, int_str) + ")";
  if (name == "plane-curve")
    return "plane-curve(" +
           join(monomials, [](const Exponent2& e) { return std::to_string(e.x) + ":" + std::to_string(e.y); }) +
           ";" + rhs.str() + ")";
  return name;
}

LinearSeparationSystem build(const FamilySpec& spec) {
  if (spec.name == "lagrange") return lagrange(spec.n);
  if (spec.name == "sparse") return sparse_poly(spec.exponents);
  if (spec.name == "plane-curve") return plane_curve(spec.monomials, spec.rhs);
  if (spec.name == "weierstrass") return weierstrass(spec.w_n, spec.w_s).first;
  if (spec.name == "hermite") return hermite(spec.n, spec.orders);
  throw InputError("unknown family '" + spec.name + "'");
}

} // namespace sepvar
