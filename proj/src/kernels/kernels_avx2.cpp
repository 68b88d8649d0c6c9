// Built with -mavx2 (no -mfma): lane arithmetic matches the scalar kernels
// operation for operation.
#include "sepvar/kernels.hpp"

#include <immintrin.h>

namespace sepvar::kernels::avx2 {

void axpby(double alpha, const double* x, double beta, const double* y, double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d ax = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    __m256d by = _mm256_mul_pd(vb, _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(ax, by));
  }
  scalar::axpby(alpha, x + i, beta, y + i, out + i, n - i);
}

void scale(double alpha, const double* x, double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  scalar::scale(alpha, x + i, out + i, n - i);
}

double symplectic_sum(const double* w, const double* fa, const double* fb, const double* ga, const double* gb,
                      std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d lhs = _mm256_mul_pd(_mm256_loadu_pd(fa + j), _mm256_loadu_pd(gb + j));
    __m256d rhs = _mm256_mul_pd(_mm256_loadu_pd(ga + j), _mm256_loadu_pd(fb + j));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + j), _mm256_sub_pd(lhs, rhs)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  return total + scalar::symplectic_sum(w + j, fa + j, fb + j, ga + j, gb + j, n - j);
}

void polyval_batch(const double* coeffs, std::size_t ncoeffs, const double* ts, double* out, std::size_t m) {
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d t = _mm256_loadu_pd(ts + i);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = ncoeffs; k-- > 0;) acc = _mm256_add_pd(_mm256_mul_pd(acc, t), _mm256_set1_pd(coeffs[k]));
    _mm256_storeu_pd(out + i, acc);
  }
  scalar::polyval_batch(coeffs, ncoeffs, ts + i, out + i, m - i);
}

} // namespace sepvar::kernels::avx2
