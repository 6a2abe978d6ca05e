#pragma once

#include <complex>

namespace holodisc {

/// Complex number carrying its derivative with respect to one real
/// parameter. Conjugation is real-linear, so d/dt conj(u) = conj(du/dt)
/// and the non-holomorphic defining functions differentiate exactly.
struct Dual {
  std::complex<double> v{};
  std::complex<double> d{};

  constexpr Dual() = default;
  constexpr Dual(std::complex<double> value, std::complex<double> deriv = {})
      : v(value), d(deriv) {}
  constexpr Dual(double value) : v(value) {}
};

inline Dual conj(const Dual& a) { return {std::conj(a.v), std::conj(a.d)}; }

inline Dual operator-(const Dual& a) { return {-a.v, -a.d}; }

inline Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator*(const Dual& a, const Dual& b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d};
}
inline Dual operator/(const Dual& a, const Dual& b) {
  const auto q = a.v / b.v;
  return {q, (a.d - q * b.d) / b.v};
}

inline Dual operator+(const Dual& a, std::complex<double> s) { return {a.v + s, a.d}; }
inline Dual operator+(std::complex<double> s, const Dual& a) { return {s + a.v, a.d}; }
inline Dual operator-(const Dual& a, std::complex<double> s) { return {a.v - s, a.d}; }
inline Dual operator-(std::complex<double> s, const Dual& a) { return {s - a.v, -a.d}; }
inline Dual operator*(const Dual& a, std::complex<double> s) { return {a.v * s, a.d * s}; }
inline Dual operator*(std::complex<double> s, const Dual& a) { return {s * a.v, s * a.d}; }
inline Dual operator/(const Dual& a, std::complex<double> s) { return {a.v / s, a.d / s}; }
inline Dual operator/(std::complex<double> s, const Dual& a) { return Dual(s) / a; }

inline Dual operator+(const Dual& a, double s) { return a + std::complex<double>(s); }
inline Dual operator+(double s, const Dual& a) { return std::complex<double>(s) + a; }
inline Dual operator-(const Dual& a, double s) { return a - std::complex<double>(s); }
inline Dual operator-(double s, const Dual& a) { return std::complex<double>(s) - a; }
inline Dual operator*(const Dual& a, double s) { return a * std::complex<double>(s); }
inline Dual operator*(double s, const Dual& a) { return std::complex<double>(s) * a; }

inline std::complex<double> value_of(const Dual& a) { return a.v; }
inline std::complex<double> value_of(std::complex<double> a) { return a; }

}  // namespace holodisc
