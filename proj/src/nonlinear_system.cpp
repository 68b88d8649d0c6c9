#include "sepvar/nonlinear_system.hpp"

#include <algorithm>
#include <cmath>

namespace sepvar {

void MultiPoly::add_term(std::vector<int> h, int ex, int ey, const Rational& c) {
  if (h.size() != num_h_)
    throw DimensionMismatch("term has " + std::to_string(h.size()) + " H-exponents, expected " +
                            std::to_string(num_h_));
  for (int e : h)
    if (e < 0) throw InputError("H-exponents must be nonnegative");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(MultiExponent{std::move(h), ex, ey}, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

MultiPoly MultiPoly::from_row(const SeparationRow& row) {
  const std::size_t n = row.basis.size();
  MultiPoly f(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<int> h(n, 0);
    h[j] = 1;
    for (const auto& [e, c] : row.basis[j].terms()) f.add_term(h, e.x, e.y, c);
  }
  for (const auto& [e, c] : row.rhs.terms()) f.add_term(std::vector<int>(n, 0), e.x, e.y, Rational(-c));
  return f;
}

double residual_scale(const MultiPoly& f, std::span<const double> h, double x, double y) {
  double scale = 0.0;
  for (const auto& [e, c] : f.terms()) {
    double t = std::abs(to_double(c));
    for (std::size_t j = 0; j < e.h.size(); ++j) t *= std::pow(std::abs(h[j]), e.h[j]);
    t *= std::abs(pow_int(x, e.x)) * std::abs(pow_int(y, e.y));
    scale = std::max(scale, t);
  }
  return scale;
}

NonlinearSeparationSystem::NonlinearSeparationSystem(std::vector<MultiPoly> residuals)
    : residuals_(std::move(residuals)) {
  if (residuals_.empty()) throw DimensionMismatch("a separation system needs at least one residual");
  for (std::size_t i = 0; i < residuals_.size(); ++i)
    if (residuals_[i].num_h() != residuals_.size())
      throw DimensionMismatch("residual " + std::to_string(i) + " has num_h " +
                              std::to_string(residuals_[i].num_h()) + ", expected " +
                              std::to_string(residuals_.size()));
}

NonlinearSeparationSystem NonlinearSeparationSystem::from_linear(const LinearSeparationSystem& sys) {
  std::vector<MultiPoly> residuals;
  for (const auto& row : sys.rows()) residuals.push_back(MultiPoly::from_row(row));
  return NonlinearSeparationSystem(std::move(residuals));
}

namespace {

double scaled_residual(const NonlinearSeparationSystem& sys, const PointConfiguration<double>& pts,
                       const std::vector<double>& h, std::vector<double>& values) {
  double worst = 0.0;
  values.resize(sys.n());
  for (std::size_t i = 0; i < sys.n(); ++i) {
    values[i] = residual_eval(sys.residual(i), h, pts.a[i], pts.b[i]);
    double scale = std::max(1.0, residual_scale(sys.residual(i), h, pts.a[i], pts.b[i]));
    double r = std::abs(values[i]) / scale;
    if (!std::isfinite(r)) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, r);
  }
  return worst;
}

} // namespace

NewtonResult newton_solve(const NonlinearSeparationSystem& sys, const PointConfiguration<double>& pts,
                          std::vector<double> guess, const NewtonOptions& opts) {
  const std::size_t n = sys.n();
  pts.check(n);
  if (guess.size() != n)
    throw DimensionMismatch("initial guess has " + std::to_string(guess.size()) + " entries, expected " +
                            std::to_string(n));
  if (opts.max_iter < 1) throw InputError("max_iter must be positive");

  std::vector<double> values;
  double res = scaled_residual(sys, pts, guess, values);
  int iter = 0;
  while (!(res <= opts.tol)) {
    if (iter == opts.max_iter || !std::isfinite(res)) throw NewtonDiverged(iter, res);
    Matrix<double> jac = h_jacobian(sys, pts, guess);
    std::vector<double> neg(n);
    for (std::size_t i = 0; i < n; ++i) neg[i] = -values[i];
    std::vector<double> step;
    try {
      step = solve(jac, neg);
    } catch (const SingularSystem& e) {
      throw SingularJacobian("Newton step has no admissible pivot in column " + std::to_string(e.pivot()));
    }
    for (std::size_t j = 0; j < n; ++j) guess[j] += step[j];
    ++iter;
    res = scaled_residual(sys, pts, guess, values);
  }
  return {std::move(guess), iter, res};
}

SolutionWithJacobian<double> solve(const NonlinearSeparationSystem& sys, const PointConfiguration<double>& pts,
                                   std::vector<double> guess, const NewtonOptions& opts) {
  NewtonResult root = newton_solve(sys, pts, std::move(guess), opts);
  Matrix<double> jac = implicit_jacobian(sys, pts, root.H);
  return {std::move(root.H), std::move(jac)};
}

} // namespace sepvar
