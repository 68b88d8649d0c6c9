#include "sepvar/families.hpp"
#include "sepvar/nonlinear_system.hpp"
#include "sepvar/poisson.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sepvar;

namespace {

// F1 = H1^2 + H2 x - y, F2 = H1 H2 + H2 x - y
NonlinearSeparationSystem two_by_two() {
  MultiPoly f1(2), f2(2);
  f1.add_term({2, 0}, 0, 0, 1);
  f1.add_term({0, 1}, 1, 0, 1);
  f1.add_term({0, 0}, 0, 1, -1);
  f2.add_term({1, 1}, 0, 0, 1);
  f2.add_term({0, 1}, 1, 0, 1);
  f2.add_term({0, 0}, 0, 1, -1);
  return NonlinearSeparationSystem({f1, f2});
}

const PointConfiguration<double> kPts{{1.0, 2.0}, {5.0, 6.0}};

} // namespace

TEST_CASE("residual_eval examples") {
  auto sys = two_by_two();
  CHECK(residual_eval(sys.residual(0), std::vector<Rational>{1, 2}, Rational(3), Rational(7)) == 0);

  MultiPoly tauto(1);
  tauto.add_term({1}, 0, 0, 1);
  tauto.add_term({0}, 0, 1, -1);
  CHECK(residual_eval(tauto, std::vector<Rational>{Rational(4, 3)}, Rational(9), Rational(4, 3)) == 0);

  MultiPoly c(2);
  c.add_term({1, 0}, 1, 0, 3);
  c.add_term({0, 0}, 0, 0, Rational(5, 2));
  CHECK(residual_eval(c, std::vector<Rational>{0, 0}, Rational(0), Rational(0)) == Rational(5, 2));

  MultiPoly neg(1);
  neg.add_term({0}, -1, 0, 1);
  CHECK_THROWS_AS(residual_eval(neg, std::vector<double>{1.0}, 0.0, 1.0), NegativePowerOfZero);
  CHECK_THROWS_AS(residual_eval(c, std::vector<double>{1.0}, 0.0, 1.0), DimensionMismatch);
}

TEST_CASE("multipoly terms are canonical") {
  MultiPoly p(1);
  p.add_term({1}, 0, 0, 2);
  p.add_term({1}, 0, 0, -2);
  CHECK(p.terms().empty());
  CHECK_THROWS_AS(NonlinearSeparationSystem({MultiPoly(2)}), DimensionMismatch);
}

TEST_CASE("newton on the 2x2 example") {
  auto sys = two_by_two();
  auto res = newton_solve(sys, kPts, {1.0, 3.0});
  CHECK(res.scaled_residual <= 1e-12);
  for (std::size_t i = 0; i < 2; ++i) {
    double f = residual_eval(sys.residual(i), res.H, kPts.a[i], kPts.b[i]);
    CHECK(std::abs(f) <= 1e-12 * std::max(1.0, residual_scale(sys.residual(i), res.H, kPts.a[i], kPts.b[i])));
  }
  CHECK_FALSE((res.H[0] == 1.0 && res.H[1] == 2.0));

  NewtonOptions once;
  once.max_iter = 1;
  CHECK_THROWS_AS(newton_solve(sys, kPts, {100.0, -100.0}, once), NewtonDiverged);
}

TEST_CASE("implicit Jacobian matches central differences of Newton") {
  auto sys = two_by_two();
  auto sol = solve(sys, kPts, {1.0, 3.0});
  for (std::size_t c = 0; c < 4; ++c)
    for (std::size_t j = 0; j < 2; ++j) {
      double fd = oracle::central_difference(
          [&](double xi) {
            auto moved = kPts;
            (c < 2 ? moved.a[c] : moved.b[c - 2]) = xi;
            return newton_solve(sys, moved, sol.H).H[j];
          },
          c < 2 ? kPts.a[c] : kPts.b[c - 2]);
      CHECK(oracle::rel_err(sol.jac(j, c), fd) <= 1e-6);
    }
  auto br = bracket_matrix(sol, PoissonStructure::canonical(2), kPts);
  CHECK(std::abs(br(0, 1)) <= 1e-8);
}

TEST_CASE("x-free residuals have no a-dependence") {
  MultiPoly f1(2), f2(2);
  f1.add_term({1, 0}, 0, 0, 1);
  f1.add_term({0, 1}, 0, 0, 1);
  f1.add_term({0, 0}, 0, 1, -1);
  f2.add_term({1, 0}, 0, 0, 1);
  f2.add_term({0, 1}, 0, 0, -1);
  f2.add_term({0, 0}, 0, 2, -1);
  NonlinearSeparationSystem sys({f1, f2});
  PointConfiguration<Rational> pts{{3, 4}, {5, 2}};
  std::vector<Rational> h{Rational(9, 2), Rational(1, 2)};
  auto jac = implicit_jacobian(sys, pts, h);
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t k = 0; k < 2; ++k) CHECK(jac(j, k) == 0);
  CHECK(jac(0, 2) != 0);
}

TEST_CASE("embedded linear systems reproduce the linear path") {
  std::mt19937_64 rng(41);
  std::vector<LinearSeparationSystem> systems{lagrange(3), sparse_poly({-1, 0, 2}), weierstrass(2, 3).first,
                                              hermite(3, {0, 1, 2})};
  for (const auto& lin : systems) {
    auto nl = NonlinearSeparationSystem::from_linear(lin);
    int checked = 0;
    for (int t = 0; t < 50 && checked < 5; ++t) {
      PointConfiguration<Rational> pts;
      for (std::size_t k = 0; k < lin.n(); ++k) {
        pts.a.push_back(oracle::nonzero_rational(rng));
        pts.b.push_back(oracle::small_rational(rng));
      }
      SolutionWithJacobian<Rational> sol;
      try {
        sol = solve(lin, pts);
      } catch (const SingularSystem&) {
        continue;
      }
      ++checked;
      for (std::size_t i = 0; i < lin.n(); ++i) CHECK(residual_eval(nl.residual(i), sol.H, pts.a[i], pts.b[i]) == 0);
      CHECK(implicit_jacobian(nl, pts, sol.H) == sol.jac);
      auto fpts = to_float(pts);
      auto fsol = solve(lin, fpts);
      auto nres = newton_solve(nl, fpts, std::vector<double>(lin.n(), 0.0));
      CHECK(nres.iterations <= 2);
      for (std::size_t j = 0; j < lin.n(); ++j)
        CHECK(std::abs(nres.H[j] - fsol.H[j]) <= 1e-9 * std::max(1.0, std::abs(fsol.H[j])));
    }
    CHECK(checked == 5);
  }
}

TEST_CASE("singular dF/dH is reported") {
  MultiPoly f(2);
  f.add_term({1, 0}, 0, 0, 1);
  f.add_term({0, 1}, 0, 0, 1);
  f.add_term({0, 0}, 0, 1, -1);
  NonlinearSeparationSystem sys({f, f});
  CHECK_THROWS_AS(implicit_jacobian(sys, PointConfiguration<double>{{1.0, 2.0}, {1.0, 2.0}}, {0.0, 0.0}),
                  SingularJacobian);
}
