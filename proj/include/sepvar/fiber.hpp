#pragma once

// Level sets of the Hamiltonian map. With H fixed, each separation relation
// F_i(H, x, y) = 0 is a plane curve and the level set is the product of
// these curves; sample_fiber emits points on one factor.

#include "sepvar/linear_system.hpp"
#include "sepvar/nonlinear_system.hpp"

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace sepvar {

struct Window {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
};

struct FiberPoint {
  double x = 0.0;
  double y = 0.0;
  double residual = 0.0; // F_i(H, x, y)
};

struct FiberCurveSample {
  std::size_t index = 0; // separation slot, 0-based
  std::vector<FiberPoint> points;
  Window window;
  double residual_bound = 0.0;
  std::size_t skipped_columns = 0; // negative y-power with the y-window crossing 0, or x = 0 under x^-k
};

inline constexpr std::size_t kFiberSubintervals = 64;

/// Scans `resolution` equally spaced columns x in [x_min, x_max]; in each, real
/// roots in y are bracketed by sign changes on 64 subintervals and bisected to
/// |dy| <= (y_max - y_min) * 1e-10. Even-multiplicity roots are only found
/// when they land on a grid node. Throws EmptyWindow or InputError.
FiberCurveSample sample_fiber(const NonlinearSeparationSystem& sys, const std::vector<double>& h, std::size_t slot,
                              const Window& window, std::size_t resolution);

FiberCurveSample sample_fiber(const LinearSeparationSystem& sys, const std::vector<double>& h, std::size_t slot,
                              const Window& window, std::size_t resolution);

/// "slot,x,y,residual" header then one row per point (slot 1-based).
void write_csv(std::ostream& os, const FiberCurveSample& sample);

} // namespace sepvar
