#pragma once

#include "sepvar/rational.hpp"
#include "sepvar/scalar.hpp"

#include <map>
#include <string>
#include <utility>

namespace sepvar {

/// Exponent pair (power of x, power of y); either may be negative.
struct Exponent2 {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const Exponent2&, const Exponent2&) = default;
};

/// Sparse bivariate Laurent polynomial with exact coefficients. Terms are kept
/// in lexicographic exponent order and zero coefficients are never stored, so
/// structural equality is polynomial equality.
class LaurentPoly2 {
public:
  using TermMap = std::map<Exponent2, Rational>;

  LaurentPoly2() = default;
  LaurentPoly2(const Rational& constant); // NOLINT: constants convert implicitly

  static LaurentPoly2 monomial(int ex, int ey, const Rational& c = Rational(1));
  static LaurentPoly2 x_pow(int e) { return monomial(e, 0); }
  static LaurentPoly2 y_pow(int e) { return monomial(0, e); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coeff(int ex, int ey) const;
  bool has_negative_x() const;
  bool has_negative_y() const;

  /// Adds c * x^ex * y^ey, dropping the term if the sum cancels.
  void add_term(int ex, int ey, const Rational& c);

  LaurentPoly2 operator-() const;
  friend LaurentPoly2 operator+(const LaurentPoly2& p, const LaurentPoly2& q);
  friend LaurentPoly2 operator-(const LaurentPoly2& p, const LaurentPoly2& q);
  friend LaurentPoly2 operator*(const LaurentPoly2& p, const LaurentPoly2& q);
  LaurentPoly2& operator+=(const LaurentPoly2& q) { return *this = *this + q; }
  LaurentPoly2& operator-=(const LaurentPoly2& q) { return *this = *this - q; }
  LaurentPoly2& operator*=(const LaurentPoly2& q) { return *this = *this * q; }
  friend bool operator==(const LaurentPoly2&, const LaurentPoly2&) = default;

  /// Human-readable form, e.g. "x^2*y - 3".
  std::string str() const;

  template <class S>
  S eval(const S& x, const S& y) const;

private:
  TermMap terms_;
};

/// Evaluates sum c * x^ex * y^ey in scalar kind S (gradients carried through
/// for duals). Throws NegativePowerOfZero for a negative exponent at zero.
template <class S>
S poly_eval(const LaurentPoly2& p, const S& x, const S& y) {
  S acc = lift<S>(Rational(0));
  for (const auto& [e, c] : p.terms()) {
    S term = lift<S>(c);
    if (e.x != 0) term = term * pow_int(x, e.x);
    if (e.y != 0) term = term * pow_int(y, e.y);
    acc = acc + term;
  }
  return acc;
}

template <class S>
S LaurentPoly2::eval(const S& x, const S& y) const {
  return poly_eval(*this, x, y);
}

/// order-th derivative in x: (e_x, e_y, c) -> (e_x - order, e_y, c * e_x (e_x - 1) ... (e_x - order + 1)).
LaurentPoly2 poly_diff_x(const LaurentPoly2& p, int order = 1);
LaurentPoly2 poly_diff_y(const LaurentPoly2& p, int order = 1);

} // namespace sepvar
