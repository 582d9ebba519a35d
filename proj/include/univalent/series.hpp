#pragma once

/**
 * @file series.hpp
 * @brief Truncated Taylor series with complex double coefficients.
 *
 * A TaylorSeries of order N holds c_0 ... c_N. All arithmetic truncates to
 * degree N; binary operations on series of different order pad the shorter
 * one with zeros and return the larger order.
 *
 *   auto k = exp_series(scale(log1m(64), 2.0));  // 1/(1-z)^2
 *   k.eval({0.5, 0.0});                         // 4
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "univalent/error.hpp"

namespace univalent {

using complex = std::complex<double>;

inline constexpr std::size_t default_order = 64;
/// Quotients with |b_0| at or below this are rejected.
inline constexpr double div_eps = 1e-12;
/// Series evaluation is allowed up to this modulus.
inline constexpr double eval_radius_cap = 0.999;
/// Accuracy of series evaluation is only promised inside this radius.
inline constexpr double series_trust_radius = 0.7;

class TaylorSeries {
 public:
  explicit TaylorSeries(std::size_t order = default_order) : coeffs_(order + 1, complex{}) {}

  /// Coefficients c_0..c_{size-1}; the order becomes size-1.
  explicit TaylorSeries(std::vector<complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(complex{});
  }

  static TaylorSeries from(std::initializer_list<complex> head, std::size_t order) {
    TaylorSeries s(order);
    std::size_t k = 0;
    for (auto c : head) {
      if (k > order) break;
      s.coeffs_[k++] = c;
    }
    return s;
  }

  static TaylorSeries constant(complex c, std::size_t order) { return from({c}, order); }
  static TaylorSeries identity(std::size_t order) { return from({0.0, 1.0}, order); }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  std::span<const complex> coeffs() const noexcept { return coeffs_; }

  complex operator[](std::size_t k) const noexcept {
    return k < coeffs_.size() ? coeffs_[k] : complex{};
  }
  complex& operator[](std::size_t k) { return coeffs_.at(k); }

  /// Same coefficients, truncated or zero-padded to a new order.
  TaylorSeries resized(std::size_t order) const {
    TaylorSeries s(order);
    std::copy_n(coeffs_.begin(), std::min(coeffs_.size(), order + 1), s.coeffs_.begin());
    return s;
  }

  /// Horner evaluation of the truncated polynomial.
  complex eval(complex z) const noexcept {
    complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

 private:
  std::vector<complex> coeffs_;
};

inline TaylorSeries add(const TaylorSeries& a, const TaylorSeries& b) {
  const std::size_t n = std::max(a.order(), b.order());
  TaylorSeries out(n);
  for (std::size_t k = 0; k <= n; ++k) out[k] = a[k] + b[k];
  return out;
}

inline TaylorSeries sub(const TaylorSeries& a, const TaylorSeries& b) {
  const std::size_t n = std::max(a.order(), b.order());
  TaylorSeries out(n);
  for (std::size_t k = 0; k <= n; ++k) out[k] = a[k] - b[k];
  return out;
}

inline TaylorSeries scale(const TaylorSeries& a, complex s) {
  TaylorSeries out(a.order());
  for (std::size_t k = 0; k <= a.order(); ++k) out[k] = s * a[k];
  return out;
}

inline TaylorSeries neg(const TaylorSeries& a) { return scale(a, -1.0); }

/// Cauchy product truncated to the larger order.
inline TaylorSeries mul(const TaylorSeries& a, const TaylorSeries& b) {
  const std::size_t n = std::max(a.order(), b.order());
  TaylorSeries out(n);
  for (std::size_t i = 0; i <= std::min(n, a.order()); ++i) {
    const complex ai = a[i];
    if (ai == complex{}) continue;
    for (std::size_t j = 0; i + j <= n && j <= b.order(); ++j) out[i + j] += ai * b[j];
  }
  return out;
}

/// q with q*b = a to degree N. Requires |b_0| > div_eps.
inline TaylorSeries div(const TaylorSeries& a, const TaylorSeries& b) {
  const complex b0 = b[0];
  if (std::abs(b0) <= div_eps) {
    throw Error(ErrorKind::DivisionByNonUnit, "constant term of divisor is (numerically) zero");
  }
  const std::size_t n = std::max(a.order(), b.order());
  TaylorSeries q(n);
  for (std::size_t k = 0; k <= n; ++k) {
    complex acc = a[k];
    for (std::size_t j = 1; j <= std::min(k, b.order()); ++j) acc -= b[j] * q[k - j];
    q[k] = acc / b0;
  }
  return q;
}

/// Termwise derivative; the top coefficient becomes zero so the order is kept.
inline TaylorSeries derivative(const TaylorSeries& a) {
  TaylorSeries out(a.order());
  for (std::size_t k = 1; k <= a.order(); ++k) out[k - 1] = static_cast<double>(k) * a[k];
  return out;
}

/// Antiderivative vanishing at 0, truncated to the same order.
inline TaylorSeries integrate0(const TaylorSeries& a) {
  TaylorSeries out(a.order());
  for (std::size_t k = 1; k <= a.order(); ++k) out[k] = a[k - 1] / static_cast<double>(k);
  return out;
}

/// exp(a) for a with a_0 = 0, via (exp a)' = a' exp a.
inline TaylorSeries exp_series(const TaylorSeries& a) {
  if (std::abs(a[0]) > 1e-14) {
    throw Error(ErrorKind::NonzeroConstantTerm, "exp_series needs a vanishing constant term");
  }
  const std::size_t n = a.order();
  TaylorSeries e(n);
  e[0] = 1.0;
  // k e_k = sum_{j=1..k} j a_j e_{k-j}
  for (std::size_t k = 1; k <= n; ++k) {
    complex acc{};
    for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * a[j] * e[k - j];
    e[k] = acc / static_cast<double>(k);
  }
  return e;
}

/// -log(1-z) = sum_{k>=1} z^k / k.
inline TaylorSeries log1m(std::size_t order = default_order) {
  TaylorSeries s(order);
  for (std::size_t k = 1; k <= order; ++k) s[k] = 1.0 / static_cast<double>(k);
  return s;
}

/// (a - a_0) / z: drops the constant term and shifts down by one degree.
inline TaylorSeries shift_down(const TaylorSeries& a) {
  TaylorSeries out(a.order());
  for (std::size_t k = 1; k <= a.order(); ++k) out[k - 1] = a[k];
  return out;
}

/// z * a, truncated.
inline TaylorSeries shift_up(const TaylorSeries& a) {
  TaylorSeries out(a.order());
  for (std::size_t k = 1; k <= a.order(); ++k) out[k] = a[k - 1];
  return out;
}

inline TaylorSeries operator+(const TaylorSeries& a, const TaylorSeries& b) { return add(a, b); }
inline TaylorSeries operator-(const TaylorSeries& a, const TaylorSeries& b) { return sub(a, b); }
inline TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b) { return mul(a, b); }
inline TaylorSeries operator/(const TaylorSeries& a, const TaylorSeries& b) { return div(a, b); }

}  // namespace univalent
