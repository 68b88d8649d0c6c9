#include "sepvar/kernels.hpp"

namespace sepvar::kernels::scalar {

void axpby(double alpha, const double* x, double beta, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double ax = alpha * x[i];
    double by = beta * y[i];
    out[i] = ax + by;
  }
}

void scale(double alpha, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = alpha * x[i];
}

double symplectic_sum(const double* w, const double* fa, const double* fb, const double* ga, const double* gb,
                      std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double lhs = fa[j] * gb[j];
    double rhs = ga[j] * fb[j];
    acc += w[j] * (lhs - rhs);
  }
  return acc;
}

void polyval_batch(const double* coeffs, std::size_t ncoeffs, const double* ts, double* out, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) {
    double acc = 0.0;
    for (std::size_t k = ncoeffs; k-- > 0;) {
      double prod = acc * ts[i];
      acc = prod + coeffs[k];
    }
    out[i] = acc;
  }
}

} // namespace sepvar::kernels::scalar
