#include "sepvar/laurent_poly.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace sepvar;

namespace {

LaurentPoly2 X(int e = 1) { return LaurentPoly2::x_pow(e); }
LaurentPoly2 Y(int e = 1) { return LaurentPoly2::y_pow(e); }

} // namespace

TEST_CASE("poly_eval examples") {
  LaurentPoly2 p = X(2) * Y() - LaurentPoly2(Rational(3));
  CHECK(poly_eval(p, Rational(2), Rational(5)) == 17);
  CHECK(poly_eval(p, 2.0, 5.0) == 17.0);

  LaurentPoly2 cusp = Y(2) - X(3);
  CHECK(poly_eval(cusp, Rational(1), Rational(1)) == 0);

  auto x = Dual<Rational>::variable_of_width(0, Rational(2), 2);
  auto y = Dual<Rational>::variable_of_width(1, Rational(7), 2);
  auto inv = poly_eval(X(-1), x, y);
  CHECK(inv.value() == Rational(1, 2));
  CHECK(inv.partial(0) == Rational(-1, 4));
  CHECK(inv.partial(1) == 0);

  CHECK_THROWS_AS(poly_eval(X(-1), Rational(0), Rational(1)), NegativePowerOfZero);
  CHECK_THROWS_AS(poly_eval(Y(-2), 1.0, 0.0), NegativePowerOfZero);
  CHECK(poly_eval(X(2), Rational(0), Rational(0)) == 0);
}

TEST_CASE("poly_diff_x examples") {
  CHECK(poly_diff_x(X(3), 2) == LaurentPoly2::monomial(1, 0, 6));
  CHECK(poly_diff_x(X(2) + X(), 3).is_zero());
  CHECK(poly_diff_x(X(-1), 1) == LaurentPoly2::monomial(-2, 0, -1));
  CHECK(poly_diff_x(Y(4), 1).is_zero());
  CHECK(poly_diff_x(X(2) * Y(3), 0) == X(2) * Y(3));
  CHECK(poly_diff_y(X() * Y(3), 1) == LaurentPoly2::monomial(1, 2, 3));
}

TEST_CASE("terms are canonical") {
  LaurentPoly2 p = X() + Y() - X();
  CHECK(p == Y());
  CHECK(p.size() == 1);
  CHECK((X() - X()).is_zero());
  CHECK(LaurentPoly2(Rational(0)).is_zero());
  CHECK((X(2) * Y() - LaurentPoly2(Rational(3))).str() == "x^2*y - 3");
  CHECK(LaurentPoly2::monomial(-1, 2, Rational(-1, 2)).str() == "-1/2*x^-1*y^2");
}

TEST_CASE("ring laws and evaluation homomorphism on random polynomials") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    LaurentPoly2 p = oracle::random_poly(rng), q = oracle::random_poly(rng), r = oracle::random_poly(rng);
    CHECK(p + q == q + p);
    CHECK(p * q == q * p);
    CHECK((p + q) + r == p + (q + r));
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);

    Rational x = oracle::nonzero_rational(rng), y = oracle::nonzero_rational(rng);
    CHECK(poly_eval(p * q, x, y) == poly_eval(p, x, y) * poly_eval(q, x, y));
    CHECK(poly_eval(p + q, x, y) == poly_eval(p, x, y) + poly_eval(q, x, y));

    CHECK(poly_diff_x(p + q) == poly_diff_x(p) + poly_diff_x(q));
    CHECK(poly_diff_x(p * q) == poly_diff_x(p) * q + p * poly_diff_x(q));
    CHECK(poly_diff_x(p, 2) == poly_diff_x(poly_diff_x(p)));
  }
}

TEST_CASE("dual evaluation equals symbolic partial derivatives") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    LaurentPoly2 p = oracle::random_poly(rng);
    Rational x = oracle::nonzero_rational(rng), y = oracle::nonzero_rational(rng);
    auto v = poly_eval(p, Dual<Rational>::variable_of_width(0, x, 2), Dual<Rational>::variable_of_width(1, y, 2));
    CHECK(v.value() == poly_eval(p, x, y));
    CHECK(v.partial(0) == poly_eval(poly_diff_x(p), x, y));
    CHECK(v.partial(1) == poly_eval(poly_diff_y(p), x, y));
  }
}
