#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <utility>

#include "holodisc/errors.hpp"

namespace holodisc {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Fixes the domain Omega_lambda = {rho^lambda < 0} cut by the polydisc
/// |z| < 1 + epsilon, |w| < 1 / (4 (1 + epsilon)^3).
struct DomainParams {
  double epsilon = 0.01;
  double lambda = 1.0;

  void validate() const {
    detail::require(epsilon > 0.0 && epsilon <= 0.01,
                    "epsilon must lie in (0, 1/100]");
    detail::require(lambda >= 0.0 && std::isfinite(lambda), "lambda must be a finite nonnegative real");
  }

  /// Radius of the first factor of the bounding polydisc.
  double z_radius() const { return 1.0 + epsilon; }
  /// Radius of the second factor, 1 / (4 (1 + eps)^3).
  double w_radius() const {
    const double s = 1.0 + epsilon;
    return 1.0 / (4.0 * s * s * s);
  }
};

inline double w_radius_for(double epsilon) { return DomainParams{epsilon, 1.0}.w_radius(); }

struct Point2 {
  Complex z;
  Complex w;
};

/// Point of the cotangent bundle T*C^2: base (z, w), fibre (zt, wt).
struct CotangentPoint {
  Complex z;
  Complex w;
  Complex zt;
  Complex wt;
};

/// Re(u) evaluated as (u + conj(u)) / 2 so that every real part in the
/// library goes through the same complex-arithmetic path.
template <class C>
C real_part(const C& u) {
  using std::conj;
  return 0.5 * (u + conj(u));
}

/// rho^lambda(z, w) = |z|^2 + |w|^2 - lambda Re(conj(z)^4 w^2) - 1, for any
/// scalar type closed under complex arithmetic and conj (Complex, Dual).
template <class C>
C rho_value(double lambda, const C& z, const C& w) {
  using std::conj;
  const C zb = conj(z);
  const C zb2 = zb * zb;
  const C mixed = zb2 * zb2 * w * w;
  return (z * zb - 1.0) + (w * conj(w) - lambda * real_part(mixed));
}

/// (d rho/dz, d rho/dw) = (conj z - 2 lambda z^3 conj(w)^2, conj w - lambda conj(z)^4 w).
template <class C>
std::pair<C, C> rho_partials(double lambda, const C& z, const C& w) {
  using std::conj;
  const C zb = conj(z);
  const C wb = conj(w);
  const C dz = zb - 2.0 * lambda * z * z * z * wb * wb;
  const C zb2 = zb * zb;
  const C dw = wb - lambda * zb2 * zb2 * w;
  return {dz, dw};
}

inline double rho(const DomainParams& params, const Point2& p) {
  return rho_value<Complex>(params.lambda, p.z, p.w).real();
}

inline std::pair<Complex, Complex> rho_gradient(const DomainParams& params, const Point2& p) {
  return rho_partials<Complex>(params.lambda, p.z, p.w);
}

/// Levi form |Z|^2 + |W|^2 - 8 lambda Re(conj(z)^3 w conj(Z) W).
inline double levi_form(const DomainParams& params, const Point2& p,
                        const std::pair<Complex, Complex>& v) {
  const auto [Z, W] = v;
  const Complex zb = std::conj(p.z);
  const Complex cross = zb * zb * zb * p.w * std::conj(Z) * W;
  return std::norm(Z) + std::norm(W) - 8.0 * params.lambda * real_part(cross).real();
}

/// The same Levi form written as a sum of squares:
/// |Z - 4 lambda conj(z)^3 w W|^2 + (1 - 16 lambda^2 |z|^6 |w|^2) |W|^2.
inline double levi_form_sum_of_squares(const DomainParams& params, const Point2& p,
                                       const std::pair<Complex, Complex>& v) {
  const auto [Z, W] = v;
  const double lam = params.lambda;
  const Complex zb = std::conj(p.z);
  const double az2 = std::norm(p.z);
  const double coef = 1.0 - 16.0 * lam * lam * az2 * az2 * az2 * std::norm(p.w);
  return std::norm(Z - 4.0 * lam * zb * zb * zb * p.w * W) + coef * std::norm(W);
}

inline bool in_box(const DomainParams& params, const Point2& p) {
  return std::abs(p.z) < params.z_radius() && std::abs(p.w) < params.w_radius();
}

inline bool in_domain(const DomainParams& params, const Point2& p) {
  return rho(params, p) < 0.0 && in_box(params, p);
}

/// Infimum over the closed polydisc of 1 - 16 lambda^2 |z|^6 |w|^2. The
/// expression is monotone in |z| and |w|, so the infimum sits at the corner.
/// Positive means the Levi form is positive definite on the whole box.
inline double psh_margin(const DomainParams& params) {
  const double rz = params.z_radius();
  const double rw = params.w_radius();
  const double lam = params.lambda;
  return 1.0 - 16.0 * lam * lam * std::pow(rz, 6) * rw * rw;
}

/// Sampled witness of Omega inside Delta x C: returns false only for a box
/// point with |z| >= 1 where rho is negative beyond roundoff.
inline bool cylinder_inclusion_witness(const DomainParams& params, const Point2& p) {
  const bool in_closed_box = std::abs(p.z) <= params.z_radius() && std::abs(p.w) <= params.w_radius();
  if (!in_closed_box || std::abs(p.z) < 1.0) return true;
  // rho is a difference of O(1) terms; allow a few ulps of cancellation.
  return rho(params, p) >= -64.0 * std::numeric_limits<double>::epsilon();
}

}  // namespace holodisc
