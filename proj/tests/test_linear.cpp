#include "sepvar/families.hpp"
#include "sepvar/linear_system.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace sepvar;

namespace {

PointConfiguration<Rational> rpts(std::vector<Rational> a, std::vector<Rational> b) { return {std::move(a), std::move(b)}; }

} // namespace

TEST_CASE("assemble evaluates row i at its own pair") {
  auto lag2 = assemble(lagrange(2), rpts({0, 1}, {1, 3}));
  CHECK(lag2.matrix(0, 0) == 1);
  CHECK(lag2.matrix(0, 1) == 0);
  CHECK(lag2.matrix(1, 0) == 1);
  CHECK(lag2.matrix(1, 1) == 1);
  CHECK(lag2.rhs == std::vector<Rational>{1, 3});

  auto lag1 = assemble(lagrange(1), rpts({7}, {4}));
  CHECK(lag1.matrix(0, 0) == 1);
  CHECK(lag1.rhs == std::vector<Rational>{4});

  auto w = assemble(weierstrass(2, 3).first, rpts({1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}));
  for (std::size_t j = 0; j < 5; ++j) CHECK(w.matrix(0, j) == 1);
  CHECK(w.rhs[0] == 0);

  CHECK_THROWS_AS(assemble(sparse_poly({-1, 1}), rpts({0, 2}, {1, 1})), NegativePowerOfZero);
  CHECK_THROWS_AS(assemble(lagrange(2), rpts({0}, {1})), DimensionMismatch);
}

TEST_CASE("solve: Lagrange examples") {
  auto sol = solve(lagrange(2), rpts({0, 1}, {1, 3}));
  CHECK(sol.H == std::vector<Rational>{1, 2});
  // H2 = (b2 - b1)/(a2 - a1)
  CHECK(sol.d_db(1, 1) == 1);
  CHECK(sol.d_db(1, 0) == -1);
  CHECK(sol.d_da(1, 1) == -2);
  CHECK(sol.d_da(1, 0) == 2);

  auto one = solve(lagrange(1), rpts({Rational(5, 3)}, {Rational(-2, 7)}));
  CHECK(one.H == std::vector<Rational>{Rational(-2, 7)});
  CHECK(one.d_da(0, 0) == 0);
  CHECK(one.d_db(0, 0) == 1);

  CHECK_THROWS_AS(solve(lagrange(2), rpts({1, 1}, {0, 2})), SingularSystem);
  CHECK_THROWS_AS(solve(lagrange(2), PointConfiguration<double>{{1.0, 1.0}, {0.0, 2.0}}), SingularSystem);
  try {
    solve(lagrange(2), rpts({1, 1}, {0, 2}));
  } catch (const SingularSystem& e) {
    CHECK(e.pivot() == 1);
  }
}

TEST_CASE("rank_report examples") {
  auto r3 = rank_report(lagrange(3), rpts({0, 1, 2}, {5, 6, 7}));
  CHECK(r3.full_rank);
  CHECK(r3.deleted_row_ranks == std::vector<std::size_t>{2, 2, 2});

  auto r1 = rank_report(lagrange(1), rpts({3}, {4}));
  CHECK(r1.full_rank);
  CHECK(r1.deleted_row_ranks == std::vector<std::size_t>{0});
  CHECK(r1.hypothesis_holds(0));

  auto r2 = rank_report(lagrange(2), rpts({1, 1}, {0, 2}));
  CHECK_FALSE(r2.full_rank);
  CHECK(r2.deleted_row_ranks == std::vector<std::size_t>{1, 1});

  auto deficient = rank_report(lagrange(3), rpts({1, 1, 2}, {0, 1, 2}));
  CHECK_FALSE(deficient.full_rank);
  CHECK(deficient.hypothesis_holds(0));
  CHECK(deficient.hypothesis_holds(1));
  CHECK_FALSE(deficient.hypothesis_holds(2));

  auto fr = rank_report(lagrange(3), PointConfiguration<double>{{0.0, 1.0, 2.0}, {0.0, 0.0, 0.0}});
  CHECK(fr.deleted_row_ranks == std::vector<std::size_t>{2, 2, 2});
  for (std::size_t k = 0; k < 3; ++k) CHECK(fr.deleted_row_ranks[k] <= std::min<std::size_t>(2, fr.rank));
}

TEST_CASE("residuals vanish exactly (rational) and to 1e-10 relative (float)") {
  std::mt19937_64 rng(29);
  std::vector<LinearSeparationSystem> systems{lagrange(4), sparse_poly({-1, 0, 2}), weierstrass(2, 3).first,
                                              hermite(3, {0, 1, 2})};
  for (const auto& sys : systems) {
    int solved = 0;
    for (int t = 0; t < 40 && solved < 10; ++t) {
      PointConfiguration<Rational> pts;
      for (std::size_t k = 0; k < sys.n(); ++k) {
        pts.a.push_back(oracle::nonzero_rational(rng));
        pts.b.push_back(oracle::small_rational(rng));
      }
      SolutionWithJacobian<Rational> sol;
      try {
        sol = solve(sys, pts);
      } catch (const SingularSystem&) {
        continue;
      }
      ++solved;
      for (const auto& r : residuals(sys, pts, sol.H)) CHECK(r == 0);
      auto fpts = to_float(pts);
      auto fsol = solve(sys, fpts);
      for (double r : relative_residuals(sys, fpts, fsol.H)) CHECK(r <= 1e-10);
    }
    CHECK(solved == 10);
  }
}

TEST_CASE("perturbing one pair changes only its row") {
  std::mt19937_64 rng(31);
  auto sys = weierstrass(2, 5).first;
  PointConfiguration<Rational> pts;
  for (std::size_t k = 0; k < sys.n(); ++k) {
    pts.a.push_back(oracle::small_rational(rng));
    pts.b.push_back(oracle::small_rational(rng));
  }
  auto base = assemble(sys, pts);
  for (std::size_t k = 0; k < sys.n(); ++k) {
    auto moved = pts;
    moved.a[k] += Rational(1, 3);
    moved.b[k] -= Rational(2, 5);
    auto changed = assemble(sys, moved);
    for (std::size_t i = 0; i < sys.n(); ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < sys.n(); ++j) CHECK(changed.matrix(i, j) == base.matrix(i, j));
      CHECK(changed.rhs[i] == base.rhs[i]);
    }
  }
}

TEST_CASE("dual-mode Jacobian equals the analytic formula") {
  std::mt19937_64 rng(37);
  std::vector<LinearSeparationSystem> systems{lagrange(3), sparse_poly({-1, 0, 2}), weierstrass(2, 3).first,
                                              weierstrass(3, 4).first, hermite(4, {0, 2, 1, 3})};
  for (const auto& sys : systems) {
    int checked = 0;
    for (int t = 0; t < 50 && checked < 5; ++t) {
      PointConfiguration<Rational> pts;
      for (std::size_t k = 0; k < sys.n(); ++k) {
        pts.a.push_back(oracle::nonzero_rational(rng));
        pts.b.push_back(oracle::nonzero_rational(rng));
      }
      auto want = oracle::analytic_solution(sys, pts);
      if (want.H.empty()) continue;
      auto got = solve(sys, pts);
      ++checked;
      CHECK(got.H == want.H);
      for (std::size_t j = 0; j < sys.n(); ++j)
        for (std::size_t c = 0; c < 2 * sys.n(); ++c) CHECK(got.jac(j, c) == want.jac[j][c]);
    }
    CHECK(checked == 5);
  }
}

TEST_CASE("system construction validates row widths") {
  SeparationRow bad{{LaurentPoly2(Rational(1))}, LaurentPoly2::y_pow(1)};
  CHECK_THROWS_AS(LinearSeparationSystem({bad, bad}), DimensionMismatch);
  CHECK_THROWS_AS(LinearSeparationSystem(std::vector<SeparationRow>{}), DimensionMismatch);
}

TEST_CASE("entries with zero value but nonzero derivative still eliminate") {
  auto sys = weierstrass(2, 3).first;
  PointConfiguration<Rational> pts{{Rational(8, 7), Rational(7, 9), Rational(-7, 6), Rational(1, 6), -3},
                                   {0, Rational(-7, 6), Rational(-1, 2), Rational(-5, 2), Rational(-1, 5)}};
  auto want = oracle::analytic_solution(sys, pts);
  auto got = solve(sys, pts);
  for (std::size_t j = 0; j < 5; ++j)
    for (std::size_t c = 0; c < 10; ++c) CHECK(got.jac(j, c) == want.jac[j][c]);

  using D = Dual<Rational>;
  Matrix<D> m(2, 2);
  m(0, 0) = D(Rational(1));
  m(1, 0) = D::variable_of_width(0, Rational(0), 1);
  m(1, 1) = D(Rational(1));
  auto x = solve(m, std::vector<D>{D(Rational(1)), D(Rational(0))});
  CHECK(x[1].value() == 0);
  CHECK(x[1].partial(0) == -1);
}
