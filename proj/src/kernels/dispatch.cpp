#include "sepvar/error.hpp"
#include "sepvar/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace sepvar::kernels {

namespace {

bool cpu_has_avx2() {
#ifdef SEPVAR_HAVE_AVX2_KERNELS
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend initial_backend() {
  if (const char* env = std::getenv("SEPVAR_SIMD")) {
    std::string v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2" && cpu_has_avx2()) return Backend::Avx2;
  }
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

void check_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionMismatch("kernel operands of length " + std::to_string(a) + " and " + std::to_string(b));
}

} // namespace

std::string_view name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool available(Backend b) { return b == Backend::Scalar || cpu_has_avx2(); }

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!available(b)) throw InputError("SIMD backend '" + std::string(name(b)) + "' is not available on this CPU");
  current().store(b, std::memory_order_relaxed);
}

void axpby(double alpha, std::span<const double> x, double beta, std::span<const double> y, std::span<double> out) {
  check_same_size(x.size(), y.size());
  check_same_size(x.size(), out.size());
#ifdef SEPVAR_HAVE_AVX2_KERNELS
  if (active_backend() == Backend::Avx2) return avx2::axpby(alpha, x.data(), beta, y.data(), out.data(), x.size());
#endif
  scalar::axpby(alpha, x.data(), beta, y.data(), out.data(), x.size());
}

void scale(double alpha, std::span<const double> x, std::span<double> out) {
  check_same_size(x.size(), out.size());
#ifdef SEPVAR_HAVE_AVX2_KERNELS
  if (active_backend() == Backend::Avx2) return avx2::scale(alpha, x.data(), out.data(), x.size());
#endif
  scalar::scale(alpha, x.data(), out.data(), x.size());
}

double symplectic_sum(std::span<const double> w, std::span<const double> fa, std::span<const double> fb,
                      std::span<const double> ga, std::span<const double> gb) {
  check_same_size(w.size(), fa.size());
  check_same_size(w.size(), fb.size());
  check_same_size(w.size(), ga.size());
  check_same_size(w.size(), gb.size());
#ifdef SEPVAR_HAVE_AVX2_KERNELS
  if (active_backend() == Backend::Avx2)
    return avx2::symplectic_sum(w.data(), fa.data(), fb.data(), ga.data(), gb.data(), w.size());
#endif
  return scalar::symplectic_sum(w.data(), fa.data(), fb.data(), ga.data(), gb.data(), w.size());
}

void polyval_batch(std::span<const double> coeffs, std::span<const double> ts, std::span<double> out) {
  check_same_size(ts.size(), out.size());
#ifdef SEPVAR_HAVE_AVX2_KERNELS
  if (active_backend() == Backend::Avx2)
    return avx2::polyval_batch(coeffs.data(), coeffs.size(), ts.data(), out.data(), ts.size());
#endif
  scalar::polyval_batch(coeffs.data(), coeffs.size(), ts.data(), out.data(), ts.size());
}

} // namespace sepvar::kernels
