#pragma once

// Constructors for the standard families of linear separation systems.

#include "sepvar/laurent_poly.hpp"
#include "sepvar/linear_system.hpp"

#include <string>
#include <utility>
#include <vector>

namespace sepvar {

/// Coprime pair (w_n, w_s) of the curve y^w_n = x^w_s + sum_q lambda_q f_q(x, y)
/// with its gap values q = w_n w_s - w_n i - w_s j > 0, ascending.
struct WeierstrassSpec {
  int w_n = 0;
  int w_s = 0;
  std::vector<int> q_list;
  std::vector<std::vector<Exponent2>> monomials; // (i, j) pairs grouped by q, aligned with q_list
  std::size_t d() const { return q_list.size(); }
};

/// Interpolation by sum_j H_j x^(j-1): basis (1, x, .., x^(n-1)), rhs y.
LinearSeparationSystem lagrange(std::size_t n);

/// Sparse or Laurent interpolation sum_j H_j x^e_j. Throws DuplicateExponents.
LinearSeparationSystem sparse_poly(const std::vector<int>& exponents);

/// Curve sum_j H_j x^p_j y^q_j = f_0(x, y) through n points. Throws DuplicateMonomials.
LinearSeparationSystem plane_curve(const std::vector<Exponent2>& monomials, const LaurentPoly2& rhs);

/// Gap values of (w_n, w_s) without building a system. Throws NotCoprime.
WeierstrassSpec weierstrass_spec(int w_n, int w_s);

/// Unknown H_j is lambda_{q_list[j]}. Throws NotCoprime.
std::pair<LinearSeparationSystem, WeierstrassSpec> weierstrass(int w_n, int w_s);

/// Row i constrains the orders[i]-th derivative of a degree n-1 polynomial at
/// a_i to equal b_i. Throws OrderTooHigh when orders[i] > n - 1.
LinearSeparationSystem hermite(std::size_t n, const std::vector<int>& orders);

} // namespace sepvar

namespace sepvar {

/// Family identifier plus its parameter block, as accepted by the CLI
/// ("lagrange", "sparse", "plane-curve", "weierstrass", "hermite").
struct FamilySpec {
  std::string name;
  std::size_t n = 0;                 // lagrange, hermite
  std::vector<int> exponents;        // sparse
  std::vector<Exponent2> monomials;  // plane-curve
  LaurentPoly2 rhs;                  // plane-curve
  int w_n = 0;                       // weierstrass
  int w_s = 0;
  std::vector<int> orders;           // hermite

  static FamilySpec make_lagrange(std::size_t n);
  static FamilySpec make_sparse(std::vector<int> exponents);
  static FamilySpec make_plane_curve(std::vector<Exponent2> monomials, LaurentPoly2 rhs);
  static FamilySpec make_weierstrass(int w_n, int w_s);
  static FamilySpec make_hermite(std::size_t n, std::vector<int> orders);

  /// Short descriptor such as "weierstrass(2,3)".
  std::string describe() const;
};

/// Builds the system named by `spec`. Throws InputError for unknown names.
LinearSeparationSystem build(const FamilySpec& spec);

} // namespace sepvar
