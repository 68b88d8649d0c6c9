#include "sepvar/scalar.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sepvar;

TEST_CASE("rational literals parse to canonical form") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-6/-4") == Rational(3, 2));
  CHECK(parse_rational("5") == 5);
  CHECK(parse_rational("+7/21") == Rational(1, 3));
  CHECK(is_canonical(parse_rational("10/-4")));
  CHECK(to_string(parse_rational("10/-4")) == "-5/2");
  CHECK(to_string(Rational(0)) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("0.5"), InputError);
  CHECK_THROWS_AS(parse_rational("1e3"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
}

TEST_CASE("rational arithmetic stays in lowest terms") {
  std::mt19937_64 rng(11);
  Rational acc = 1;
  for (int i = 0; i < 300; ++i) {
    Rational r = oracle::nonzero_rational(rng);
    switch (i % 4) {
    case 0: acc += r; break;
    case 1: acc -= r; break;
    case 2: acc *= r; break;
    default: acc /= r; break;
    }
    REQUIRE(is_canonical(acc));
    if (sgn(acc) != 0) CHECK(Rational(acc * (1 / acc)) == 1);
  }
}

TEST_CASE("to_double rounds to nearest") {
  CHECK(to_double(Rational(1, 3)) == 1.0 / 3.0);
  CHECK(to_double(Rational(-2, 7)) == -2.0 / 7.0);
  CHECK(from_double(0.375) == Rational(3, 8));
}

TEST_CASE("make_variable seeds a one-hot gradient") {
  auto x = Dual<double>::variable(0, 3.0, 1);
  CHECK(x.value() == 3.0);
  CHECK(x.grad() == std::vector<double>{1.0, 0.0});

  auto sq = x * x;
  CHECK(sq.value() == 9.0);
  CHECK(sq.grad() == std::vector<double>{6.0, 0.0});

  auto r = Dual<Rational>::variable(1, Rational(1, 2), 1);
  CHECK(r.grad() == std::vector<Rational>{0, 1});

  CHECK_THROWS_AS(Dual<double>::variable(2, 1.0, 1), InputError);
}

TEST_CASE("dual arithmetic follows the chain rule") {
  auto x = Dual<Rational>::variable(0, Rational(2), 1);
  auto y = Dual<Rational>::variable(1, Rational(5), 1);

  auto prod = x * y;
  CHECK(prod.value() == 10);
  CHECK(prod.grad() == std::vector<Rational>{5, 2});

  auto inv = pow_int(x, -1);
  CHECK(inv.value() == Rational(1, 2));
  CHECK(inv.grad() == std::vector<Rational>{Rational(-1, 4), 0});

  auto one = x / x;
  CHECK(one.value() == 1);
  CHECK(one.grad() == std::vector<Rational>{0, 0});

  auto diff = x - y;
  CHECK(diff.value() == -3);
  CHECK(diff.grad() == std::vector<Rational>{1, -1});

  CHECK(pow_int(x, 3).grad() == std::vector<Rational>{12, 0});
  CHECK(pow_int(x, 0).value() == 1);
}

TEST_CASE("dual division and negative powers reject zero") {
  auto z = Dual<Rational>::variable(0, Rational(0), 1);
  auto x = Dual<Rational>::variable(1, Rational(3), 1);
  CHECK_THROWS_AS(x / z, DivisionByZero);
  CHECK_THROWS_AS(pow_int(z, -2), NegativePowerOfZero);
  CHECK_THROWS_AS(pow_int(Rational(0), -1), NegativePowerOfZero);
  CHECK_THROWS_AS(Dual<double>(1.0) / Dual<double>(0.0), DivisionByZero);
  CHECK(pow_int(z, 2).value() == 0);
}

TEST_CASE("constants have zero gradient of any width") {
  auto c = lift<Dual<Rational>>(Rational(7));
  CHECK(c.width() == 0);
  CHECK(c.partial(3) == 0);
  auto x = Dual<Rational>::variable(2, Rational(3), 2);
  auto s = c + x;
  CHECK(s.width() == 4);
  CHECK(s.grad() == std::vector<Rational>{0, 0, 1, 0});
  CHECK((c * x).grad() == std::vector<Rational>{0, 0, 7, 0});
}

TEST_CASE("Leibniz rule holds exactly on random rational duals") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    std::vector<Rational> gx, gy;
    for (int i = 0; i < 4; ++i) {
      gx.push_back(oracle::small_rational(rng));
      gy.push_back(oracle::small_rational(rng));
    }
    Dual<Rational> x(oracle::small_rational(rng), gx), y(oracle::nonzero_rational(rng), gy);
    auto p = x * y;
    auto q = x / y;
    for (int i = 0; i < 4; ++i) {
      CHECK(p.grad()[i] == x.value() * gy[i] + y.value() * gx[i]);
      CHECK(q.grad()[i] == (gx[i] * y.value() - x.value() * gy[i]) / (y.value() * y.value()));
    }
  }
}

TEST_CASE("float dual gradients match central differences") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.5, 2.5);
  auto f = [](auto x, auto y) { return (x * x * y - pow_int(y, 3)) / (x + y) + pow_int(x, -2); };
  for (int t = 0; t < 100; ++t) {
    double x0 = u(rng), y0 = u(rng);
    auto out = f(Dual<double>::variable_of_width(0, x0, 2), Dual<double>::variable_of_width(1, y0, 2));
    double fx = oracle::central_difference([&](double x) { return f(x, y0); }, x0);
    double fy = oracle::central_difference([&](double y) { return f(x0, y); }, y0);
    CHECK(oracle::rel_err(out.grad()[0], fx) <= 1e-6);
    CHECK(oracle::rel_err(out.grad()[1], fy) <= 1e-6);
  }
}

TEST_CASE("nested duals carry second derivatives") {
  using D = Dual<Rational>;
  using DD = Dual<D>;
  // x^3 at x = 2: value 8, first 12, second 12.
  DD x(D::variable_of_width(0, Rational(2), 1), std::vector<D>{D(Rational(1))});
  DD cube = pow_int(x, 3);
  CHECK(cube.value().value() == 8);
  CHECK(cube.partial(0).value() == 12);
  CHECK(cube.partial(0).partial(0) == 12);
  CHECK(cube.value().partial(0) == 12);
}

TEST_CASE("scale-aware negligibility") {
  CHECK(negligible(1e-13, 1.0));
  CHECK_FALSE(negligible(1e-11, 1.0));
  CHECK_FALSE(negligible(1e-13, 1e-3));
  CHECK(negligible(Rational(0), 1.0));
  CHECK_FALSE(negligible(Rational(1, 1000000000), 1e12));
}
