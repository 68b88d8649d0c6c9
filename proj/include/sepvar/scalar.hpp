#pragma once

// Scalar abstraction shared by every evaluation path: 64-bit floats, exact
// rationals, and forward-mode dual numbers over either (nested duals allowed).

#include "sepvar/error.hpp"
#include "sepvar/kernels.hpp"
#include "sepvar/rational.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace sepvar {

enum class Mode { Float64, Rational };

template <class T>
class Dual;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  using Base = double;
  static constexpr bool exact = false;
  static const double& base(const double& x) { return x; }
  static double lift(const Rational& r) { return to_double(r); }
};

template <>
struct ScalarTraits<Rational> {
  using Base = Rational;
  static constexpr bool exact = true;
  static const Rational& base(const Rational& x) { return x; }
  static Rational lift(const Rational& r) { return r; }
};

template <class T>
struct ScalarTraits<Dual<T>> {
  using Base = typename ScalarTraits<T>::Base;
  static constexpr bool exact = ScalarTraits<T>::exact;
  static const Base& base(const Dual<T>& x) { return ScalarTraits<T>::base(x.value()); }
  static Dual<T> lift(const Rational& r) { return Dual<T>(ScalarTraits<T>::lift(r)); }
};

template <class S>
using base_t = typename ScalarTraits<S>::Base;

template <class S>
inline constexpr bool is_exact_v = ScalarTraits<S>::exact;

/// Innermost (non-dual) value.
template <class S>
const base_t<S>& base_value(const S& x) {
  return ScalarTraits<S>::base(x);
}

/// Converts an exact constant into scalar kind S (zero gradient for duals).
template <class S>
S lift(const Rational& r) {
  return ScalarTraits<S>::lift(r);
}

template <class S>
S from_int(long v) {
  return lift<S>(Rational(v));
}

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
template <class T>
bool is_zero(const Dual<T>& x) {
  return is_zero(x.value());
}

/// Value and every derivative are zero.
inline bool is_identically_zero(double x) { return x == 0.0; }
inline bool is_identically_zero(const Rational& x) { return sgn(x) == 0; }
template <class T>
bool is_identically_zero(const Dual<T>& x) {
  if (!is_identically_zero(x.value())) return false;
  for (const auto& g : x.grad())
    if (!is_identically_zero(g)) return false;
  return true;
}

/// |x| of the innermost value as a double, for pivot choice and reporting.
template <class S>
double magnitude(const S& x) {
  if constexpr (std::is_same_v<base_t<S>, double>)
    return std::abs(base_value(x));
  else
    return std::abs(to_double(base_value(x)));
}

inline double as_double(double x) { return x; }
inline double as_double(const Rational& x) { return to_double(x); }

inline double abs_value(double x) { return std::abs(x); }
inline Rational abs_value(const Rational& x) { return abs(x); }

/// Scale-aware zero test. Exact scalars compare against zero; floats count
/// as zero when |x| <= rel * scale.
template <class S>
bool negligible(const S& x, double scale, double rel = 1e-12) {
  if constexpr (is_exact_v<S>)
    return is_zero(base_value(x));
  else
    return std::abs(base_value(x)) <= rel * scale;
}

inline double checked_quotient(double x, double y) {
  if (y == 0.0) throw DivisionByZero();
  double q = x / y;
  if (!std::isfinite(q) && std::isfinite(x)) throw DivisionByZero();
  return q;
}

inline Rational checked_quotient(const Rational& x, const Rational& y) {
  if (sgn(y) == 0) throw DivisionByZero();
  return Rational(x / y);
}

inline double pow_int(double x, int e) {
  if (e < 0) {
    if (x == 0.0) throw NegativePowerOfZero();
    return 1.0 / pow_int(x, -e);
  }
  double result = 1.0;
  double base = x;
  for (unsigned k = static_cast<unsigned>(e); k != 0; k >>= 1) {
    if (k & 1u) result *= base;
    if (k > 1) base *= base;
  }
  return result;
}

inline Rational pow_int(const Rational& x, int e) {
  if (e < 0) {
    if (sgn(x) == 0) throw NegativePowerOfZero();
    Rational inv = 1 / x;
    return pow_int(inv, -e);
  }
  Rational result(1);
  mpz_pow_ui(result.get_num_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(result.get_den_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(e));
  return result;
}

/// Forward-mode dual number carrying a full gradient. Gradient slot layout
/// for point data is [d/da_1 .. d/da_n, d/db_1 .. d/db_n]. An empty gradient
/// stands for the zero gradient of whatever width the computation uses.
template <class T>
class Dual {
public:
  using value_type = T;

  Dual() : value_(lift<T>(Rational(0))) {}
  Dual(T value) : value_(std::move(value)) {} // NOLINT: constants convert implicitly
  Dual(T value, std::vector<T> grad) : value_(std::move(value)), grad_(std::move(grad)) {}

  /// Seed for coordinate `slot` among 2n coordinates.
  static Dual variable(std::size_t slot, T value, std::size_t n) {
    return variable_of_width(slot, std::move(value), 2 * n);
  }

  static Dual variable_of_width(std::size_t slot, T value, std::size_t width) {
    if (slot >= width)
      throw InputError("variable slot " + std::to_string(slot) + " out of range [0, " + std::to_string(width) + ")");
    std::vector<T> grad(width, lift<T>(Rational(0)));
    grad[slot] = lift<T>(Rational(1));
    return Dual(std::move(value), std::move(grad));
  }

  const T& value() const { return value_; }
  const std::vector<T>& grad() const { return grad_; }
  std::size_t width() const { return grad_.size(); }

  T partial(std::size_t slot) const { return slot < grad_.size() ? grad_[slot] : lift<T>(Rational(0)); }

  /// Gradient padded with zeros to `width` entries.
  std::vector<T> dense_grad(std::size_t width) const {
    std::vector<T> g(width, lift<T>(Rational(0)));
    for (std::size_t i = 0; i < grad_.size() && i < width; ++i) g[i] = grad_[i];
    return g;
  }

  Dual operator-() const { return Dual(-value_, combine(lift<T>(Rational(-1)), grad_, lift<T>(Rational(0)), {})); }

  friend Dual operator+(const Dual& x, const Dual& y) {
    return Dual(x.value_ + y.value_, combine(lift<T>(Rational(1)), x.grad_, lift<T>(Rational(1)), y.grad_));
  }
  friend Dual operator-(const Dual& x, const Dual& y) {
    return Dual(x.value_ - y.value_, combine(lift<T>(Rational(1)), x.grad_, lift<T>(Rational(-1)), y.grad_));
  }
  friend Dual operator*(const Dual& x, const Dual& y) {
    return Dual(x.value_ * y.value_, combine(y.value_, x.grad_, x.value_, y.grad_));
  }
  friend Dual operator/(const Dual& x, const Dual& y) {
    if (is_zero(y.value_)) throw DivisionByZero();
    T inv = checked_quotient(lift<T>(Rational(1)), y.value_);
    T q = x.value_ * inv;
    return Dual(q, combine(inv, x.grad_, -(q * inv), y.grad_));
  }

  Dual& operator+=(const Dual& y) { return *this = *this + y; }
  Dual& operator-=(const Dual& y) { return *this = *this - y; }
  Dual& operator*=(const Dual& y) { return *this = *this * y; }
  Dual& operator/=(const Dual& y) { return *this = *this / y; }

  friend bool operator==(const Dual& x, const Dual& y) {
    if (!(x.value_ == y.value_)) return false;
    std::size_t w = std::max(x.grad_.size(), y.grad_.size());
    for (std::size_t i = 0; i < w; ++i)
      if (!(x.partial(i) == y.partial(i))) return false;
    return true;
  }

private:
  // alpha * gx + beta * gy with empty vectors read as zero.
  static std::vector<T> combine(const T& alpha, const std::vector<T>& gx, const T& beta, const std::vector<T>& gy) {
    if (gx.empty() && gy.empty()) return {};
    if (gy.empty()) return scaled(alpha, gx);
    if (gx.empty()) return scaled(beta, gy);
    if (gx.size() != gy.size())
      throw DimensionMismatch("dual gradients of width " + std::to_string(gx.size()) + " and " +
                              std::to_string(gy.size()));
    std::vector<T> out(gx.size());
    if constexpr (std::is_same_v<T, double>) {
      kernels::axpby(alpha, gx, beta, gy, out);
    } else {
      for (std::size_t i = 0; i < gx.size(); ++i) out[i] = alpha * gx[i] + beta * gy[i];
    }
    return out;
  }

  static std::vector<T> scaled(const T& alpha, const std::vector<T>& g) {
    std::vector<T> out(g.size());
    if constexpr (std::is_same_v<T, double>) {
      kernels::scale(alpha, g, out);
    } else {
      for (std::size_t i = 0; i < g.size(); ++i) out[i] = alpha * g[i];
    }
    return out;
  }

  T value_;
  std::vector<T> grad_;
};

template <class T>
Dual<T> checked_quotient(const Dual<T>& x, const Dual<T>& y) {
  return x / y;
}

/// x^e with the chain rule applied to the gradient.
template <class T>
Dual<T> pow_int(const Dual<T>& x, int e) {
  if (e == 0) return Dual<T>(lift<T>(Rational(1)));
  if (e < 0 && is_zero(x.value())) throw NegativePowerOfZero();
  T lower = pow_int(x.value(), e - 1);
  T value = lower * x.value();
  T factor = lift<T>(Rational(e)) * lower;
  std::vector<T> grad(x.grad().size());
  for (std::size_t i = 0; i < grad.size(); ++i) grad[i] = factor * x.grad()[i];
  return Dual<T>(std::move(value), std::move(grad));
}

/// Scalar kind used for float or exact computations with first derivatives.
template <class S>
using Grad = Dual<S>;

} // namespace sepvar
