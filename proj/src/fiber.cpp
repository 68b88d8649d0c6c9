#include "sepvar/fiber.hpp"

#include "sepvar/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>

namespace sepvar {

namespace {

// F_i with H substituted: coefficient per (exp_x, exp_y).
using FloatTerms = std::map<std::pair<int, int>, double>;

FloatTerms substitute(const MultiPoly& f, const std::vector<double>& h) {
  FloatTerms out;
  for (const auto& [e, c] : f.terms()) {
    double v = to_double(c);
    for (std::size_t j = 0; j < e.h.size(); ++j) v *= pow_int(h[j], e.h[j]);
    out[{e.x, e.y}] += v;
  }
  return out;
}

double term_scale(const FloatTerms& terms, double x, const Window& w) {
  double scale = 0.0;
  const double far = std::max(std::abs(w.y_min), std::abs(w.y_max));
  const double near = (w.y_min <= 0.0 && w.y_max >= 0.0) ? 0.0 : std::min(std::abs(w.y_min), std::abs(w.y_max));
  for (const auto& [e, c] : terms) {
    if (e.first < 0 && x == 0.0) continue;
    if (e.second < 0 && near == 0.0) continue;
    double ymag = e.second >= 0 ? std::pow(far, e.second) : std::pow(near, e.second);
    scale = std::max(scale, std::abs(c) * std::abs(pow_int(x, e.first)) * ymag);
  }
  return scale;
}

bool column_is_polynomial(const FloatTerms& terms, double x, const Window& w) {
  const bool crosses_zero = w.y_min <= 0.0 && w.y_max >= 0.0;
  for (const auto& [e, c] : terms) {
    if (e.first < 0 && x == 0.0) return false;
    if (e.second < 0 && crosses_zero) return false;
  }
  return true;
}

// Coefficients of y^(-shift) * F(x, y) as an ordinary polynomial in y.
std::vector<double> column_coefficients(const FloatTerms& terms, double x) {
  int shift = 0, top = 0;
  for (const auto& [e, c] : terms) {
    shift = std::min(shift, e.second);
    top = std::max(top, e.second);
  }
  std::vector<double> coeffs(static_cast<std::size_t>(top - shift + 1), 0.0);
  for (const auto& [e, c] : terms) coeffs[static_cast<std::size_t>(e.second - shift)] += c * pow_int(x, e.first);
  return coeffs;
}

double horner(const std::vector<double>& coeffs, double t) {
  double out = 0.0;
  kernels::polyval_batch(coeffs, std::span<const double>(&t, 1), std::span<double>(&out, 1));
  return out;
}

} // namespace

FiberCurveSample sample_fiber(const NonlinearSeparationSystem& sys, const std::vector<double>& h, std::size_t slot,
                              const Window& window, std::size_t resolution) {
  if (!(window.x_min < window.x_max) || !(window.y_min < window.y_max) || !std::isfinite(window.x_min) ||
      !std::isfinite(window.x_max) || !std::isfinite(window.y_min) || !std::isfinite(window.y_max))
    throw EmptyWindow();
  if (resolution < 2) throw InputError("fiber resolution must be at least 2");
  if (slot >= sys.n()) throw InputError("fiber slot " + std::to_string(slot + 1) + " out of range");
  if (h.size() != sys.n()) throw DimensionMismatch("H has " + std::to_string(h.size()) + " entries");

  const MultiPoly& f = sys.residual(slot);
  const FloatTerms terms = substitute(f, h);

  FiberCurveSample out;
  out.index = slot;
  out.window = window;

  std::vector<double> xs(resolution);
  for (std::size_t c = 0; c < resolution; ++c)
    xs[c] = c + 1 == resolution ? window.x_max
                                : window.x_min + (window.x_max - window.x_min) * static_cast<double>(c) /
                                                     static_cast<double>(resolution - 1);
  double scale = 0.0;
  for (double x : xs) scale = std::max(scale, term_scale(terms, x, window));
  out.residual_bound = 1e-8 * scale;

  const double dy_target = (window.y_max - window.y_min) * 1e-10;
  std::vector<double> ys(kFiberSubintervals + 1), vals(kFiberSubintervals + 1);
  for (std::size_t k = 0; k <= kFiberSubintervals; ++k)
    ys[k] = k == kFiberSubintervals ? window.y_max
                                    : window.y_min + (window.y_max - window.y_min) * static_cast<double>(k) /
                                                         static_cast<double>(kFiberSubintervals);

  std::vector<double> hvec = h;
  for (double x : xs) {
    if (!column_is_polynomial(terms, x, window)) {
      ++out.skipped_columns;
      continue;
    }
    const std::vector<double> coeffs = column_coefficients(terms, x);
    kernels::polyval_batch(coeffs, ys, vals);

    std::vector<double> roots;
    for (std::size_t k = 0; k <= kFiberSubintervals; ++k) {
      if (vals[k] == 0.0) {
        if (k == 0 || vals[k - 1] != 0.0) roots.push_back(ys[k]);
        continue;
      }
      if (k == kFiberSubintervals || vals[k + 1] == 0.0) continue;
      if ((vals[k] < 0.0) == (vals[k + 1] < 0.0)) continue;
      double lo = ys[k], hi = ys[k + 1], flo = vals[k];
      while (hi - lo > dy_target) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = horner(coeffs, mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    for (double y : roots) {
      double r = residual_eval(f, hvec, x, y);
      if (std::abs(r) <= out.residual_bound) out.points.push_back({x, y, r});
    }
  }
  return out;
}

FiberCurveSample sample_fiber(const LinearSeparationSystem& sys, const std::vector<double>& h, std::size_t slot,
                              const Window& window, std::size_t resolution) {
  return sample_fiber(NonlinearSeparationSystem::from_linear(sys), h, slot, window, resolution);
}

void write_csv(std::ostream& os, const FiberCurveSample& sample) {
  os << "slot,x,y,residual\n";
  os << std::setprecision(17);
  for (const auto& p : sample.points) os << sample.index + 1 << ',' << p.x << ',' << p.y << ',' << p.residual << '\n';
}

} // namespace sepvar
