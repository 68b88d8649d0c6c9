#pragma once

// Nonlinear separation relations F_i(H_1..H_n, a_i, b_i) = 0 with polynomial
// residuals, a Newton solver for H, and the implicit-function Jacobian.

#include "sepvar/error.hpp"
#include "sepvar/linear_system.hpp"
#include "sepvar/matrix.hpp"
#include "sepvar/scalar.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace sepvar {

struct MultiExponent {
  std::vector<int> h; // powers of H_1..H_n, nonnegative
  int x = 0;
  int y = 0;
  friend auto operator<=>(const MultiExponent&, const MultiExponent&) = default;
  friend bool operator==(const MultiExponent&, const MultiExponent&) = default;
};

/// Sparse polynomial in H_1..H_n with Laurent dependence on (x, y).
class MultiPoly {
public:
  using TermMap = std::map<MultiExponent, Rational>;

  explicit MultiPoly(std::size_t num_h = 0) : num_h_(num_h) {}

  /// Linear residual sum_j f_j(x, y) H_j - f_0(x, y) of one separation row.
  static MultiPoly from_row(const SeparationRow& row);

  std::size_t num_h() const { return num_h_; }
  const TermMap& terms() const { return terms_; }

  /// Adds c * H^h * x^ex * y^ey; cancelling terms are removed.
  void add_term(std::vector<int> h, int ex, int ey, const Rational& c);

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

private:
  std::size_t num_h_;
  TermMap terms_;
};

template <class S>
S residual_eval(const MultiPoly& f, std::span<const S> h, const S& x, const S& y) {
  if (h.size() != f.num_h())
    throw DimensionMismatch("residual expects " + std::to_string(f.num_h()) + " unknowns, got " +
                            std::to_string(h.size()));
  S acc = lift<S>(Rational(0));
  for (const auto& [e, c] : f.terms()) {
    S term = lift<S>(c);
    for (std::size_t j = 0; j < e.h.size(); ++j)
      if (e.h[j] != 0) term = term * pow_int(h[j], e.h[j]);
    if (e.x != 0) term = term * pow_int(x, e.x);
    if (e.y != 0) term = term * pow_int(y, e.y);
    acc = acc + term;
  }
  return acc;
}

template <class S>
S residual_eval(const MultiPoly& f, const std::vector<S>& h, const S& x, const S& y) {
  return residual_eval(f, std::span<const S>(h), x, y);
}

/// Largest |term| of f at (H, x, y); the scale of its residual.
double residual_scale(const MultiPoly& f, std::span<const double> h, double x, double y);

class NonlinearSeparationSystem {
public:
  NonlinearSeparationSystem() = default;
  /// Throws DimensionMismatch unless every residual has num_h == residuals.size().
  explicit NonlinearSeparationSystem(std::vector<MultiPoly> residuals);

  static NonlinearSeparationSystem from_linear(const LinearSeparationSystem& sys);

  std::size_t n() const { return residuals_.size(); }
  const std::vector<MultiPoly>& residuals() const { return residuals_; }
  const MultiPoly& residual(std::size_t i) const { return residuals_.at(i); }

private:
  std::vector<MultiPoly> residuals_;
};

/// J_ij = dF_i/dH_j at (H, pts), by dual arithmetic in the H slots.
template <class S>
Matrix<S> h_jacobian(const NonlinearSeparationSystem& sys, const PointConfiguration<S>& pts, const std::vector<S>& h) {
  const std::size_t n = sys.n();
  pts.check(n);
  std::vector<Dual<S>> hd;
  for (std::size_t j = 0; j < n; ++j) hd.push_back(Dual<S>::variable_of_width(j, h[j], n));
  Matrix<S> jac(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Dual<S> f = residual_eval(sys.residual(i), hd, Dual<S>(pts.a[i]), Dual<S>(pts.b[i]));
    for (std::size_t j = 0; j < n; ++j) jac(i, j) = f.partial(j);
  }
  return jac;
}

/// Solves J col = -e_k dF_k/da_k and J col = -e_k dF_k/db_k for every k.
/// Returns the n x 2n matrix of dH_j/da_k (columns 0..n-1) and dH_j/db_k.
/// Throws SingularJacobian.
template <class S>
Matrix<S> implicit_jacobian(const NonlinearSeparationSystem& sys, const PointConfiguration<S>& pts,
                            const std::vector<S>& h) {
  const std::size_t n = sys.n();
  Matrix<S> j_h = h_jacobian(sys, pts, h);
  Matrix<S> rhs(n, 2 * n);
  std::vector<Dual<S>> hd;
  for (const auto& v : h) hd.push_back(Dual<S>(v));
  for (std::size_t k = 0; k < n; ++k) {
    Dual<S> f = residual_eval(sys.residual(k), hd, Dual<S>::variable_of_width(0, pts.a[k], 2),
                              Dual<S>::variable_of_width(1, pts.b[k], 2));
    rhs(k, k) = -f.partial(0);
    rhs(k, n + k) = -f.partial(1);
  }
  try {
    return solve_multi(j_h, rhs);
  } catch (const SingularSystem& e) {
    throw SingularJacobian("dF/dH has no admissible pivot in column " + std::to_string(e.pivot()));
  }
}

struct NewtonOptions {
  double tol = 1e-12;
  int max_iter = 50;
};

struct NewtonResult {
  std::vector<double> H;
  int iterations = 0;
  double scaled_residual = 0.0; // max_i |F_i| / max(1, scale_i)
};

/// Plain Newton iteration from `guess`. Converged when every
/// |F_i| <= tol * max(1, largest |term| of F_i). Throws NewtonDiverged or
/// SingularJacobian.
NewtonResult newton_solve(const NonlinearSeparationSystem& sys, const PointConfiguration<double>& pts,
                          std::vector<double> guess, const NewtonOptions& opts = {});

/// Newton root together with its implicit Jacobian.
SolutionWithJacobian<double> solve(const NonlinearSeparationSystem& sys, const PointConfiguration<double>& pts,
                                   std::vector<double> guess, const NewtonOptions& opts = {});

template <class S>
RankReport rank_report(const NonlinearSeparationSystem& sys, const PointConfiguration<S>& pts, const std::vector<S>& h) {
  return rank_report(h_jacobian(sys, pts, h));
}

} // namespace sepvar
