#pragma once

// Weighted Poisson brackets
//   {f, g} = sum_j p_j(a_j, b_j) (df/da_j dg/db_j - dg/da_j df/db_j)
// on gradient data laid out as [d/da_1 .. d/da_n, d/db_1 .. d/db_n].

#include "sepvar/error.hpp"
#include "sepvar/kernels.hpp"
#include "sepvar/laurent_poly.hpp"
#include "sepvar/linear_system.hpp"
#include "sepvar/matrix.hpp"

#include <string>
#include <type_traits>
#include <vector>

namespace sepvar {

class PoissonStructure {
public:
  PoissonStructure() = default;
  explicit PoissonStructure(std::vector<LaurentPoly2> weights, std::string id = "custom")
      : weights_(std::move(weights)), id_(std::move(id)) {}

  /// All weights 1.
  static PoissonStructure canonical(std::size_t n);
  /// Weight 1 on slot k (0-based), 0 elsewhere: the bracket of the pair (a_k, b_k).
  static PoissonStructure slot(std::size_t n, std::size_t k);

  std::size_t n() const { return weights_.size(); }
  const std::vector<LaurentPoly2>& weights() const { return weights_; }
  const LaurentPoly2& weight(std::size_t j) const { return weights_.at(j); }
  /// Descriptor echoed in reports: "canonical", "slot:k" (1-based) or "custom".
  const std::string& id() const { return id_; }

  /// p_j(a_j, b_j) for every j.
  template <class S>
  std::vector<S> evaluate(const PointConfiguration<S>& pts) const {
    pts.check(n());
    std::vector<S> out;
    for (std::size_t j = 0; j < n(); ++j) out.push_back(poly_eval(weights_[j], pts.a[j], pts.b[j]));
    return out;
  }

private:
  std::vector<LaurentPoly2> weights_;
  std::string id_ = "custom";
};

/// Bracket from already evaluated weights.
template <class S>
S bracket_weighted(const std::vector<S>& grad_f, const std::vector<S>& grad_g, const std::vector<S>& w) {
  const std::size_t n = w.size();
  if (grad_f.size() != 2 * n || grad_g.size() != 2 * n)
    throw DimensionMismatch("bracket gradients must have length " + std::to_string(2 * n));
  if constexpr (std::is_same_v<S, double>) {
    std::span<const double> f(grad_f), g(grad_g);
    return kernels::symplectic_sum(w, f.first(n), f.subspan(n), g.first(n), g.subspan(n));
  } else {
    S acc = lift<S>(Rational(0));
    for (std::size_t j = 0; j < n; ++j) acc = acc + w[j] * (grad_f[j] * grad_g[n + j] - grad_g[j] * grad_f[n + j]);
    return acc;
  }
}

template <class S>
S bracket(const std::vector<S>& grad_f, const std::vector<S>& grad_g, const PoissonStructure& ps,
          const PointConfiguration<S>& pts) {
  return bracket_weighted(grad_f, grad_g, ps.evaluate(pts));
}

/// Entry (i, j) = {H_i, H_j}.
template <class S>
Matrix<S> bracket_matrix(const SolutionWithJacobian<S>& sol, const PoissonStructure& ps,
                         const PointConfiguration<S>& pts) {
  const std::size_t n = sol.n();
  if (sol.jac.rows() != n || sol.jac.cols() != 2 * n) throw DimensionMismatch("incomplete Jacobian");
  std::vector<S> w = ps.evaluate(pts);
  std::vector<std::vector<S>> grads;
  for (std::size_t j = 0; j < n; ++j) grads.push_back(sol.grad(j));
  Matrix<S> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      out(i, j) = bracket_weighted(grads[i], grads[j], w);
      out(j, i) = -out(i, j);
    }
  return out;
}

/// Parses "canonical" or "slot:k" (k 1-based). Returns false for anything else.
bool parse_structure_shorthand(const std::string& text, std::size_t n, PoissonStructure& out);

} // namespace sepvar
