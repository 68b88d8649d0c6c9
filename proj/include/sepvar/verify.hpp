#pragma once

// Checks of the gradient relations between the Hamiltonians and of their
// pairwise commutation, plus a seeded randomized driver over the families.

#include "sepvar/error.hpp"
#include "sepvar/families.hpp"
#include "sepvar/linear_system.hpp"
#include "sepvar/matrix.hpp"
#include "sepvar/poisson.hpp"
#include "sepvar/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sepvar {

/// Gradient relations at slot k between the columns a_j = dH_j/da_k and
/// b_j = dH_j/db_k:
///   a_j = M_k b_j                       (when the b-column is nonzero)
///   a_j = A_j a_p,  b_j = A_j b_p       (p = pivot_j_k, A_p = 1)
template <class S>
struct Prop1Report {
  std::size_t k = 0;
  bool hypothesis_ok = false;
  bool b_column_nonzero = false;
  std::optional<S> M_k;
  std::optional<std::size_t> pivot_j_k;
  std::optional<std::vector<S>> A_ratios;
  S proportionality_residual{};    // max_j |a_j - M_k b_j|
  S ratio_residual{};              // max_j max(|a_j - A_j a_p|, |b_j - A_j b_p|)
  S max_minor{};                   // max_{i<j} |a_i b_j - a_j b_i|
  std::optional<S> ratio_mismatch; // max_j |a_j/a_p - b_j/b_p| when both pivots are nonzero
  S max_residual{};
  bool pass = false;
};

template <class S>
struct CommutationReport {
  S max_abs_bracket{};
  std::size_t pairs_checked = 0;
  std::string structure_id;
  Mode mode = Mode::Float64;
  double tol = 0.0;
  bool pass = false;
  Matrix<S> brackets;
};

namespace detail {

// Larger of two nonnegative residuals; a NaN always wins so it cannot pass.
template <class S>
S max_of(const S& x, const S& y) {
  return !(y <= x) ? y : x;
}

template <class S>
bool within(const S& residual, double tol) {
  if constexpr (is_exact_v<S>)
    return is_zero(residual);
  else
    return residual <= tol;
}

// Index of the largest |v_j| (lowest index on ties), or nullopt if every entry is zero.
template <class S>
std::optional<std::size_t> argmax_nonzero(const std::vector<S>& v, double scale) {
  std::optional<std::size_t> best;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (negligible(v[j], scale)) continue;
    if constexpr (is_exact_v<S>) {
      if (!best || abs_value(v[j]) > abs_value(v[*best])) best = j;
    } else {
      if (!best || std::abs(v[j]) > std::abs(v[*best])) best = j;
    }
  }
  return best;
}

} // namespace detail

template <class S>
Prop1Report<S> check_prop1(const SolutionWithJacobian<S>& sol, const RankReport& rank, std::size_t k, double tol) {
  using detail::max_of;
  const std::size_t n = sol.n();
  if (k >= n) throw InputError("slot " + std::to_string(k + 1) + " out of range 1.." + std::to_string(n));
  Prop1Report<S> r;
  r.k = k;
  r.hypothesis_ok = rank.hypothesis_holds(k);
  const S zero = lift<S>(Rational(0));
  r.proportionality_residual = r.ratio_residual = r.max_minor = r.max_residual = zero;

  std::vector<S> a, b;
  double scale = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    a.push_back(sol.d_da(j, k));
    b.push_back(sol.d_db(j, k));
    scale = std::max({scale, magnitude(a.back()), magnitude(b.back())});
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) r.max_minor = max_of(r.max_minor, S(abs_value(S(a[i] * b[j] - a[j] * b[i]))));

  auto b_pivot = detail::argmax_nonzero(b, scale);
  r.b_column_nonzero = b_pivot.has_value();
  if (b_pivot) {
    S m = a[*b_pivot] / b[*b_pivot];
    for (std::size_t j = 0; j < n; ++j)
      r.proportionality_residual = max_of(r.proportionality_residual, S(abs_value(S(a[j] - m * b[j]))));
    r.M_k = m;
  }

  auto a_pivot = detail::argmax_nonzero(a, scale);
  if (a_pivot || b_pivot) {
    const std::size_t p = a_pivot ? *a_pivot : *b_pivot;
    const std::vector<S>& source = a_pivot ? a : b;
    std::vector<S> ratios;
    for (std::size_t j = 0; j < n; ++j) ratios.push_back(j == p ? lift<S>(Rational(1)) : S(source[j] / source[p]));
    for (std::size_t j = 0; j < n; ++j) {
      r.ratio_residual = max_of(r.ratio_residual, S(abs_value(S(a[j] - ratios[j] * a[p]))));
      r.ratio_residual = max_of(r.ratio_residual, S(abs_value(S(b[j] - ratios[j] * b[p]))));
    }
    if (!negligible(a[p], scale) && !negligible(b[p], scale)) {
      S mismatch = zero;
      for (std::size_t j = 0; j < n; ++j)
        mismatch = max_of(mismatch, S(abs_value(S(a[j] / a[p] - b[j] / b[p]))));
      r.ratio_mismatch = mismatch;
    }
    r.pivot_j_k = p;
    r.A_ratios = std::move(ratios);
  }

  r.max_residual = max_of(max_of(r.proportionality_residual, r.ratio_residual), r.max_minor);
  if (r.ratio_mismatch) r.max_residual = max_of(r.max_residual, *r.ratio_mismatch);
  r.pass = detail::within(r.max_residual, tol);
  return r;
}

/// Throws HypothesisViolated for the first slot that fails the deleted-row
/// rank condition while its weight is nonzero at the given points.
template <class S>
void check_hypothesis_gate(const PoissonStructure& ps, const PointConfiguration<S>& pts, const RankReport& rank) {
  std::vector<S> w = ps.evaluate(pts);
  for (std::size_t k = 0; k < w.size(); ++k)
    if (!rank.hypothesis_holds(k) && !is_zero(w[k])) throw HypothesisViolated(k);
}

template <class S>
CommutationReport<S> check_commutation(const SolutionWithJacobian<S>& sol, const PoissonStructure& ps,
                                       const PointConfiguration<S>& pts, const RankReport& rank, double tol) {
  if (ps.n() != sol.n())
    throw DimensionMismatch("structure has " + std::to_string(ps.n()) + " weights for " + std::to_string(sol.n()) +
                            " Hamiltonians");
  check_hypothesis_gate(ps, pts, rank);
  CommutationReport<S> r;
  r.brackets = bracket_matrix(sol, ps, pts);
  r.max_abs_bracket = lift<S>(Rational(0));
  for (std::size_t i = 0; i < sol.n(); ++i)
    for (std::size_t j = i + 1; j < sol.n(); ++j) {
      r.max_abs_bracket = detail::max_of(r.max_abs_bracket, S(abs_value(r.brackets(i, j))));
      ++r.pairs_checked;
    }
  r.structure_id = ps.id();
  r.mode = is_exact_v<S> ? Mode::Rational : Mode::Float64;
  r.tol = tol;
  r.pass = detail::within(r.max_abs_bracket, tol);
  return r;
}

struct FuzzOptions {
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  Mode mode = Mode::Rational;
  double tol = 1e-9;
  std::size_t threads = 1; // 0 = SEPVAR_THREADS or hardware concurrency
};

struct FuzzReport {
  std::string family;
  Mode mode = Mode::Rational;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::size_t trials = 0;
  std::size_t draws = 0;
  std::size_t singular_draws = 0;
  std::size_t commutation_checks = 0;
  std::size_t commutation_failures = 0;
  std::size_t prop1_checks = 0;
  std::size_t prop1_failures = 0;
  double worst_bracket = 0.0; // magnitude; exactly 0 means every rational bracket vanished
  double worst_prop1 = 0.0;
  bool pass = false;
};

/// Draws one rational point configuration for `sys`: numerators in [-9, 9],
/// denominators in [1, 9].
template <class Rng>
PointConfiguration<Rational> random_points(std::size_t n, Rng& rng);

/// Random separation-local weight structure: weight j is a Laurent polynomial
/// with 1..3 terms, exponents in [-1, 2], nonzero at (a_j, b_j) evaluation.
template <class Rng>
PoissonStructure random_structure(const PointConfiguration<Rational>& pts, Rng& rng);

/// Per-trial seeded generator; trial t always sees the same stream for a given seed.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

/// Runs the seeded suite. Throws InputError for trials == 0 and
/// TooManySingularSamples when more than 90% of draws are singular.
FuzzReport fuzz(const FamilySpec& family, const FuzzOptions& opts);

/// Thread count from SEPVAR_THREADS, falling back to hardware concurrency.
std::size_t default_threads();

} // namespace sepvar

#include "sepvar/detail/random_data.hpp"
