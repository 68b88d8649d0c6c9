#pragma once

// Data-parallel inner loops of the float pipeline. Each kernel has a scalar
// reference implementation and an AVX2 variant; the active backend is picked
// once at startup from the CPU feature set and can be pinned with the
// SEPVAR_SIMD environment variable ("scalar" or "avx2") or set_backend().
//
// axpby and polyval_batch are bit-identical across backends (no FMA, same
// operation order per lane). symplectic_sum reduces in a different order on
// AVX2 and agrees with the scalar kernel to rounding.

#include <cstddef>
#include <span>
#include <string_view>

namespace sepvar::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view name(Backend b);
bool available(Backend b);
Backend active_backend();
/// Throws InputError if the backend is not available on this CPU.
void set_backend(Backend b);

/// out[i] = alpha * x[i] + beta * y[i]. out may alias x or y.
void axpby(double alpha, std::span<const double> x, double beta, std::span<const double> y,
           std::span<double> out);

/// out[i] = alpha * x[i]. out may alias x.
void scale(double alpha, std::span<const double> x, std::span<double> out);

/// sum_j w[j] * (fa[j] * gb[j] - ga[j] * fb[j]).
double symplectic_sum(std::span<const double> w, std::span<const double> fa, std::span<const double> fb,
                      std::span<const double> ga, std::span<const double> gb);

/// Horner evaluation of sum_k coeffs[k] * t^k at every t in ts.
void polyval_batch(std::span<const double> coeffs, std::span<const double> ts, std::span<double> out);

namespace scalar {
void axpby(double alpha, const double* x, double beta, const double* y, double* out, std::size_t n);
void scale(double alpha, const double* x, double* out, std::size_t n);
double symplectic_sum(const double* w, const double* fa, const double* fb, const double* ga, const double* gb,
                      std::size_t n);
void polyval_batch(const double* coeffs, std::size_t ncoeffs, const double* ts, double* out, std::size_t m);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define SEPVAR_HAVE_AVX2_KERNELS 1
namespace avx2 {
void axpby(double alpha, const double* x, double beta, const double* y, double* out, std::size_t n);
void scale(double alpha, const double* x, double* out, std::size_t n);
double symplectic_sum(const double* w, const double* fa, const double* fb, const double* ga, const double* gb,
                      std::size_t n);
void polyval_batch(const double* coeffs, std::size_t ncoeffs, const double* ts, double* out, std::size_t m);
} // namespace avx2
#endif

} // namespace sepvar::kernels
