#pragma once

// Test-only reference computations. Nothing here calls the library's
// elimination, dual-number or enumeration code paths it is used to check.

#include "sepvar/laurent_poly.hpp"
#include "sepvar/linear_system.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using sepvar::LaurentPoly2;
using sepvar::Rational;

using RMatrix = std::vector<std::vector<Rational>>;

/// Inverse by Gauss-Jordan on an augmented matrix; empty result if singular.
inline RMatrix inverse(RMatrix m) {
  const std::size_t n = m.size();
  RMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) return {};
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    Rational d = m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(m[r][c]) == 0) continue;
      Rational f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

inline std::vector<Rational> mat_vec(const RMatrix& m, const std::vector<Rational>& v) {
  std::vector<Rational> out(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

struct AnalyticSolution {
  std::vector<Rational> H;
  RMatrix jac; // n x 2n
};

/// H = M^-1 v and jac column = M^-1 (dv/dxi - (dM/dxi) H), where dM/dxi and
/// dv/dxi are nonzero only in row k and come from symbolic derivatives.
inline AnalyticSolution analytic_solution(const sepvar::LinearSeparationSystem& sys,
                                          const sepvar::PointConfiguration<Rational>& pts) {
  const std::size_t n = sys.n();
  RMatrix m(n, std::vector<Rational>(n));
  std::vector<Rational> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = sys.row(i).basis[j].eval(pts.a[i], pts.b[i]);
    v[i] = sys.row(i).rhs.eval(pts.a[i], pts.b[i]);
  }
  RMatrix inv = inverse(m);
  AnalyticSolution out;
  if (inv.empty()) return out;
  out.H = mat_vec(inv, v);
  out.jac.assign(n, std::vector<Rational>(2 * n, Rational(0)));
  for (std::size_t k = 0; k < n; ++k) {
    for (int which = 0; which < 2; ++which) {
      auto d = [&](const LaurentPoly2& p) {
        LaurentPoly2 dp = which == 0 ? sepvar::poly_diff_x(p) : sepvar::poly_diff_y(p);
        return dp.eval(pts.a[k], pts.b[k]);
      };
      std::vector<Rational> rhs(n, Rational(0));
      rhs[k] = d(sys.row(k).rhs);
      for (std::size_t j = 0; j < n; ++j) rhs[k] -= d(sys.row(k).basis[j]) * out.H[j];
      std::vector<Rational> col = mat_vec(inv, rhs);
      for (std::size_t j = 0; j < n; ++j) out.jac[j][which * n + k] = col[j];
    }
  }
  return out;
}

/// Distinct q = wn*ws - wn*i - ws*j > 0 over a box far larger than needed.
inline std::vector<int> brute_force_gaps(int wn, int ws) {
  std::set<int> qs;
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j <= 200; ++j) {
      long q = static_cast<long>(wn) * ws - static_cast<long>(wn) * i - static_cast<long>(ws) * j;
      if (q > 0) qs.insert(static_cast<int>(q));
    }
  return {qs.begin(), qs.end()};
}

/// Central difference with step 1e-6 * max(1, |x|).
inline double central_difference(const std::function<double(double)>& f, double x) {
  double h = 1e-6 * std::max(1.0, std::abs(x));
  return (f(x + h) - f(x - h)) / (2 * h);
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

inline Rational small_rational(std::mt19937_64& rng, int span = 9) {
  std::uniform_int_distribution<int> num(-span, span), den(1, span);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline Rational nonzero_rational(std::mt19937_64& rng) {
  for (;;) {
    Rational r = small_rational(rng);
    if (sgn(r) != 0) return r;
  }
}

/// Random Laurent polynomial with 1..terms_max terms, exponents in [lo, hi].
inline LaurentPoly2 random_poly(std::mt19937_64& rng, int lo = -2, int hi = 3, int terms_max = 4) {
  std::uniform_int_distribution<int> count(1, terms_max), expo(lo, hi);
  LaurentPoly2 p;
  int t = count(rng);
  for (int i = 0; i < t; ++i) p.add_term(expo(rng), expo(rng), nonzero_rational(rng));
  return p;
}

} // namespace oracle
