#pragma once

#include <random>

namespace sepvar {

namespace detail {

template <class Rng>
Rational small_rational(Rng& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

} // namespace detail

template <class Rng>
PointConfiguration<Rational> random_points(std::size_t n, Rng& rng) {
  PointConfiguration<Rational> pts;
  for (std::size_t k = 0; k < n; ++k) pts.a.push_back(detail::small_rational(rng));
  for (std::size_t k = 0; k < n; ++k) pts.b.push_back(detail::small_rational(rng));
  return pts;
}

template <class Rng>
PoissonStructure random_structure(const PointConfiguration<Rational>& pts, Rng& rng) {
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_int_distribution<int> expo(-1, 2);
  std::vector<LaurentPoly2> weights;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    for (;;) {
      LaurentPoly2 w;
      int terms = count(rng);
      for (int t = 0; t < terms; ++t) {
        Rational c = detail::small_rational(rng);
        int ex = expo(rng);
        int ey = expo(rng);
        if (sgn(c) == 0) c = 1;
        if ((ex < 0 && sgn(pts.a[j]) == 0) || (ey < 0 && sgn(pts.b[j]) == 0)) continue;
        w.add_term(ex, ey, c);
      }
      if (!w.is_zero() && sgn(poly_eval(w, pts.a[j], pts.b[j])) != 0) {
        weights.push_back(std::move(w));
        break;
      }
    }
  }
  return PoissonStructure(std::move(weights), "random");
}

} // namespace sepvar
