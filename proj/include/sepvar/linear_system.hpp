#pragma once

// Linear separation systems: row i reads sum_j f_ij(a_i, b_i) H_j = f_i0(a_i, b_i),
// each row evaluated at its own coordinate pair only.

#include "sepvar/error.hpp"
#include "sepvar/laurent_poly.hpp"
#include "sepvar/matrix.hpp"
#include "sepvar/scalar.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace sepvar {

struct SeparationRow {
  std::vector<LaurentPoly2> basis; // f_i1 .. f_in
  LaurentPoly2 rhs;                // f_i0
  friend bool operator==(const SeparationRow&, const SeparationRow&) = default;
};

class LinearSeparationSystem {
public:
  LinearSeparationSystem() = default;
  /// Throws DimensionMismatch unless every row has rows.size() basis entries.
  explicit LinearSeparationSystem(std::vector<SeparationRow> rows);

  std::size_t n() const { return rows_.size(); }
  const std::vector<SeparationRow>& rows() const { return rows_; }
  const SeparationRow& row(std::size_t i) const { return rows_.at(i); }

  friend bool operator==(const LinearSeparationSystem&, const LinearSeparationSystem&) = default;

private:
  std::vector<SeparationRow> rows_;
};

/// Coordinates (a_1..a_n, b_1..b_n).
template <class S>
struct PointConfiguration {
  std::vector<S> a;
  std::vector<S> b;

  std::size_t size() const { return a.size(); }

  void check(std::size_t n) const {
    if (a.size() != n || b.size() != n)
      throw DimensionMismatch("point configuration has " + std::to_string(a.size()) + " a-values and " +
                              std::to_string(b.size()) + " b-values for a system of size " + std::to_string(n));
  }
};

/// Seeds every coordinate as an independent dual variable: a_k in slot k,
/// b_k in slot n + k.
template <class S>
PointConfiguration<Dual<S>> seed_points(const PointConfiguration<S>& pts) {
  const std::size_t n = pts.size();
  PointConfiguration<Dual<S>> out;
  for (std::size_t k = 0; k < n; ++k) {
    out.a.push_back(Dual<S>::variable(k, pts.a[k], n));
    out.b.push_back(Dual<S>::variable(n + k, pts.b[k], n));
  }
  return out;
}

template <class S>
PointConfiguration<double> to_float(const PointConfiguration<S>& pts) {
  PointConfiguration<double> out;
  for (const auto& v : pts.a) out.a.push_back(as_double(v));
  for (const auto& v : pts.b) out.b.push_back(as_double(v));
  return out;
}

/// H with its n x 2n Jacobian: jac(j, k) = dH_j/da_k, jac(j, n + k) = dH_j/db_k.
template <class S>
struct SolutionWithJacobian {
  std::vector<S> H;
  Matrix<S> jac;

  std::size_t n() const { return H.size(); }
  const S& d_da(std::size_t j, std::size_t k) const { return jac(j, k); }
  const S& d_db(std::size_t j, std::size_t k) const { return jac(j, n() + k); }
  std::vector<S> grad(std::size_t j) const {
    std::vector<S> g(jac.row(j).begin(), jac.row(j).end());
    return g;
  }
};

/// Rank diagnostics for the deleted-row hypothesis.
struct RankReport {
  bool full_rank = false;
  std::size_t rank = 0;
  std::vector<std::size_t> deleted_row_ranks;

  /// Slot k satisfies the hypothesis when the system without row k has rank n - 1.
  bool hypothesis_holds(std::size_t k) const { return deleted_row_ranks.at(k) + 1 == deleted_row_ranks.size(); }
};

template <class S>
struct AssembledSystem {
  Matrix<S> matrix;
  std::vector<S> rhs;
};

template <class S>
AssembledSystem<S> assemble(const LinearSeparationSystem& sys, const PointConfiguration<S>& pts) {
  const std::size_t n = sys.n();
  pts.check(n);
  AssembledSystem<S> out{Matrix<S>(n, n), std::vector<S>(n, lift<S>(Rational(0)))};
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = sys.row(i);
    for (std::size_t j = 0; j < n; ++j) out.matrix(i, j) = poly_eval(row.basis[j], pts.a[i], pts.b[i]);
    out.rhs[i] = poly_eval(row.rhs, pts.a[i], pts.b[i]);
  }
  return out;
}

/// Rank of the full matrix and of every deleted-row submatrix.
template <class S>
RankReport rank_report(const Matrix<S>& m) {
  RankReport report;
  const std::size_t n = m.rows();
  const double scale = max_row_scale(m);
  report.rank = rank(m, scale);
  report.full_rank = report.rank == n;
  for (std::size_t k = 0; k < n; ++k) report.deleted_row_ranks.push_back(rank(m.without_row(k), scale));
  return report;
}

template <class S>
RankReport rank_report(const LinearSeparationSystem& sys, const PointConfiguration<S>& pts) {
  return rank_report(assemble(sys, pts).matrix);
}

/// Solves for H with the Jacobian obtained by running assembly and
/// elimination in dual arithmetic.
template <class S>
SolutionWithJacobian<S> solve(const LinearSeparationSystem& sys, const PointConfiguration<S>& pts) {
  const std::size_t n = sys.n();
  pts.check(n);
  auto assembled = assemble(sys, seed_points(pts));
  std::vector<Dual<S>> h = solve(assembled.matrix, assembled.rhs);
  SolutionWithJacobian<S> sol{{}, Matrix<S>(n, 2 * n)};
  for (std::size_t j = 0; j < n; ++j) {
    sol.H.push_back(h[j].value());
    for (std::size_t c = 0; c < 2 * n; ++c) sol.jac(j, c) = h[j].partial(c);
  }
  return sol;
}

/// sum_j f_ij(a_i, b_i) H_j - f_i0(a_i, b_i) for every row.
template <class S>
std::vector<S> residuals(const LinearSeparationSystem& sys, const PointConfiguration<S>& pts, const std::vector<S>& h) {
  auto assembled = assemble(sys, pts);
  std::vector<S> out;
  for (std::size_t i = 0; i < sys.n(); ++i) {
    S acc = -assembled.rhs[i];
    for (std::size_t j = 0; j < sys.n(); ++j) acc += assembled.matrix(i, j) * h[j];
    out.push_back(acc);
  }
  return out;
}

/// Residuals divided by the row's magnitude sum_j |f_ij H_j| + |f_i0| (floats).
std::vector<double> relative_residuals(const LinearSeparationSystem& sys, const PointConfiguration<double>& pts,
                                       const std::vector<double>& h);

} // namespace sepvar
