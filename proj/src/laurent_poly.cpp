#include "sepvar/laurent_poly.hpp"

#include "sepvar/error.hpp"

#include <sstream>

namespace sepvar {

LaurentPoly2::LaurentPoly2(const Rational& constant) { add_term(0, 0, constant); }

LaurentPoly2 LaurentPoly2::monomial(int ex, int ey, const Rational& c) {
  LaurentPoly2 p;
  p.add_term(ex, ey, c);
  return p;
}

Rational LaurentPoly2::coeff(int ex, int ey) const {
  auto it = terms_.find({ex, ey});
  return it == terms_.end() ? Rational(0) : it->second;
}

bool LaurentPoly2::has_negative_x() const {
  for (const auto& [e, c] : terms_)
    if (e.x < 0) return true;
  return false;
}

bool LaurentPoly2::has_negative_y() const {
  for (const auto& [e, c] : terms_)
    if (e.y < 0) return true;
  return false;
}

void LaurentPoly2::add_term(int ex, int ey, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(Exponent2{ex, ey}, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

LaurentPoly2 LaurentPoly2::operator-() const {
  LaurentPoly2 out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, Rational(-c));
  return out;
}

LaurentPoly2 operator+(const LaurentPoly2& p, const LaurentPoly2& q) {
  LaurentPoly2 out = p;
  for (const auto& [e, c] : q.terms_) out.add_term(e.x, e.y, c);
  return out;
}

LaurentPoly2 operator-(const LaurentPoly2& p, const LaurentPoly2& q) { return p + (-q); }

LaurentPoly2 operator*(const LaurentPoly2& p, const LaurentPoly2& q) {
  LaurentPoly2 out;
  for (const auto& [ep, cp] : p.terms_)
    for (const auto& [eq, cq] : q.terms_) out.add_term(ep.x + eq.x, ep.y + eq.y, Rational(cp * cq));
  return out;
}

namespace {

void append_power(std::ostringstream& os, const char* var, int e, bool& first_factor) {
  if (e == 0) return;
  if (!first_factor) os << '*';
  os << var;
  if (e != 1) os << '^' << e;
  first_factor = false;
}

LaurentPoly2 diff(const LaurentPoly2& p, int order, bool in_x) {
  if (order < 0) throw InputError("derivative order must be nonnegative");
  LaurentPoly2 out;
  for (const auto& [e, c] : p.terms()) {
    int power = in_x ? e.x : e.y;
    Rational factor = c;
    for (int k = 0; k < order; ++k) factor *= power - k;
    if (sgn(factor) == 0) continue;
    if (in_x)
      out.add_term(e.x - order, e.y, factor);
    else
      out.add_term(e.x, e.y - order, factor);
  }
  return out;
}

} // namespace

std::string LaurentPoly2::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (first)
      os << (sgn(c) < 0 ? "-" : "");
    else
      os << (sgn(c) < 0 ? " - " : " + ");
    bool first_factor = true;
    if (mag != 1 || (e.x == 0 && e.y == 0)) {
      os << to_string(mag);
      first_factor = false;
    }
    append_power(os, "x", e.x, first_factor);
    append_power(os, "y", e.y, first_factor);
    first = false;
  }
  return os.str();
}

LaurentPoly2 poly_diff_x(const LaurentPoly2& p, int order) { return diff(p, order, true); }
LaurentPoly2 poly_diff_y(const LaurentPoly2& p, int order) { return diff(p, order, false); }

} // namespace sepvar
