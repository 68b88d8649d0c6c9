#include "sepvar/linear_system.hpp"

#include <cmath>

namespace sepvar {

LinearSeparationSystem::LinearSeparationSystem(std::vector<SeparationRow> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw DimensionMismatch("a separation system needs at least one row");
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (rows_[i].basis.size() != rows_.size())
      throw DimensionMismatch("row " + std::to_string(i) + " has " + std::to_string(rows_[i].basis.size()) +
                              " basis functions, expected " + std::to_string(rows_.size()));
}

std::vector<double> relative_residuals(const LinearSeparationSystem& sys, const PointConfiguration<double>& pts,
                                       const std::vector<double>& h) {
  auto assembled = assemble(sys, pts);
  std::vector<double> out;
  for (std::size_t i = 0; i < sys.n(); ++i) {
    double acc = -assembled.rhs[i];
    double scale = std::abs(assembled.rhs[i]);
    for (std::size_t j = 0; j < sys.n(); ++j) {
      double t = assembled.matrix(i, j) * h[j];
      acc += t;
      scale += std::abs(t);
    }
    out.push_back(scale == 0.0 ? std::abs(acc) : std::abs(acc) / scale);
  }
  return out;
}

} // namespace sepvar
