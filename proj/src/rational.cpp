#include "sepvar/rational.hpp"

#include "sepvar/error.hpp"

#include <cctype>
#include <cmath>

namespace sepvar {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

} // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den))
    throw InputError("not a rational literal: '" + std::string(text) + "'");
  mpz_class d = parse_integer(den);
  if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Rational r(parse_integer(num), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

bool is_canonical(const Rational& r) {
  if (sgn(r.get_den()) <= 0) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return g == 1;
}

double to_double(const Rational& r) {
  // Correctly rounded when both parts are exactly representable; mpq_get_d truncates.
  if (mpz_sizeinbase(r.get_num_mpz_t(), 2) <= 53 && mpz_sizeinbase(r.get_den_mpz_t(), 2) <= 53)
    return r.get_num().get_d() / r.get_den().get_d();
  return r.get_d();
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw InputError("non-finite value cannot be made rational");
  return Rational(x);
}

} // namespace sepvar
