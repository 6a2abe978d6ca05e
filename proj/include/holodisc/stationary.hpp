#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "holodisc/disc.hpp"
#include "holodisc/domain.hpp"
#include "holodisc/errors.hpp"
#include "holodisc/fourier.hpp"

namespace holodisc {

/// Holomorphic lift Delta -> T*C^2 by Taylor coefficients of (f1, f2, ft1, ft2).
struct LiftedDisc {
  std::vector<std::array<Complex, 4>> coeffs{{Complex{}, Complex{}, Complex{}, Complex{}}};

  LiftedDisc() = default;
  explicit LiftedDisc(int degree)
      : coeffs(static_cast<std::size_t>(std::max(degree, 0) + 1),
               {Complex{}, Complex{}, Complex{}, Complex{}}) {}

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  /// The lift (zeta, 0, 1, 0) of zeta -> (zeta, 0).
  static LiftedDisc reference() {
    LiftedDisc l(1);
    l.coeffs[0][2] = 1.0;
    l.coeffs[1][0] = 1.0;
    return l;
  }

  AnalyticDisc base() const {
    AnalyticDisc d(degree());
    for (std::size_t n = 0; n < coeffs.size(); ++n) d.coeffs[n] = {coeffs[n][0], coeffs[n][1]};
    return d;
  }
};

inline CotangentPoint eval(const LiftedDisc& lift, Complex zeta) {
  detail::require(std::abs(zeta) <= 1.0 + 1e-12, "lift evaluation requires |zeta| <= 1");
  std::array<Complex, 4> acc = lift.coeffs.back();
  for (std::size_t n = lift.coeffs.size() - 1; n-- > 0;) {
    for (std::size_t c = 0; c < 4; ++c) acc[c] = acc[c] * zeta + lift.coeffs[n][c];
  }
  return {acc[0], acc[1], acc[2], acc[3]};
}

/// Chart threshold on |d rho/dz| below which rho_2..rho_4 are not used.
inline constexpr double kChartThreshold = 1e-6;

/// The four real defining functions of the conormal fibre N(zeta) near
/// (zeta, 0, 1, 0), evaluated literally; each result is real on the unit
/// circle and is returned through real_part(). Scalar type: Complex or Dual.
template <class C>
std::array<C, 4> conormal_defining(double lambda, Complex zeta, const C& z, const C& w, const C& zt,
                                   const C& wt) {
  using std::conj;
  const auto [rz, rw] = rho_partials<C>(lambda, z, w);
  if (std::abs(value_of(rz)) < kChartThreshold) {
    throw ChartError("conormal chart exit: |conj(z) - 2 lambda z^3 conj(w)^2| below threshold");
  }
  const C rzb = conj(rz);
  const C r1 = rho_value<C>(lambda, z, w);
  const C r2 = kI * zt / (zeta * rz) - kI * zeta * conj(zt) / rzb;
  const C q = zt * rw / rz;
  const C qb = conj(zt) * conj(rw) / rzb;
  const C r3 = wt - q + conj(wt) - qb;
  const C r4 = kI * wt - kI * q - kI * conj(wt) + kI * qb;
  return {real_part(r1), real_part(r2), real_part(r3), real_part(r4)};
}

inline std::array<double, 4> conormal_values(double lambda, Complex zeta, const CotangentPoint& p) {
  const auto r = conormal_defining<Complex>(lambda, zeta, p.z, p.w, p.zt, p.wt);
  return {r[0].real(), r[1].real(), r[2].real(), r[3].real()};
}

/// Max over the M-th roots of unity of |rho_k(zeta)(L(zeta))|, k = 1..4.
inline std::array<double, 4> conormal_residuals(const DomainParams& params, const LiftedDisc& lift, int M) {
  params.validate();
  detail::require(M >= 1, "M must be positive");
  std::array<double, 4> worst{};
  for (const Complex& zeta : roots_of_unity(M)) {
    const auto r = conormal_values(params.lambda, zeta, eval(lift, zeta));
    for (std::size_t k = 0; k < 4; ++k) worst[k] = std::max(worst[k], std::abs(r[k]));
  }
  return worst;
}

enum class StationarityVerdict { stationary, not_stationary, degree_too_small, not_attached };

inline const char* to_string(StationarityVerdict v) {
  switch (v) {
    case StationarityVerdict::stationary: return "stationary";
    case StationarityVerdict::not_stationary: return "not_stationary";
    case StationarityVerdict::degree_too_small: return "degree_too_small";
    case StationarityVerdict::not_attached: return "not_attached";
  }
  return "unknown";
}

/// Outcome of the multiplier search. c_coeffs[k] is the coefficient of zeta^k
/// of the real multiplier c(zeta) = c_0 + sum_k (c_k zeta^k + conj(c_k) zeta^-k).
struct StationarityResult {
  bool is_stationary = false;
  StationarityVerdict verdict = StationarityVerdict::not_stationary;
  std::vector<Complex> c_coeffs;
  double residual = 0.0;          // max |negative Fourier coefficient| of zeta c d(rho)(f)
  double attachment = 0.0;        // boundary residual of the disc
  double min_multiplier = 0.0;    // min |c| on the sample circle
  int fourier_size = 0;
};

struct StationarityOptions {
  double tol = 1e-8;
  double attach_tol = 1e-10;
};

namespace detail {

/// Sample count that separates negative from nonnegative frequencies of
/// zeta c(zeta) d(rho)(f(zeta)) without aliasing.
inline int alias_free_size(int N, int K, int M) { return std::max(M, 7 * N + 2 * K + 2); }

/// zeta * d(rho)(f(zeta)) on the sample circle, one vector per component.
inline std::array<std::vector<Complex>, 2> scaled_gradient_samples(double lambda, const AnalyticDisc& disc,
                                                                    const std::vector<Complex>& zetas) {
  std::array<std::vector<Complex>, 2> q{std::vector<Complex>(zetas.size()), std::vector<Complex>(zetas.size())};
  for (std::size_t j = 0; j < zetas.size(); ++j) {
    const Point2 p = eval(disc, zetas[j]);
    const auto [dz, dw] = rho_partials<Complex>(lambda, p.z, p.w);
    q[0][j] = zetas[j] * dz;
    q[1][j] = zetas[j] * dw;
  }
  return q;
}

inline Complex multiplier_at(const std::vector<Complex>& c, Complex zeta) {
  Complex v = c.empty() ? Complex{} : c[0];
  Complex zk = 1.0;
  for (std::size_t k = 1; k < c.size(); ++k) {
    zk *= zeta;
    v += c[k] * zk + std::conj(c[k]) * std::conj(zk);
  }
  return v;
}

struct MultiplierFit {
  std::vector<Complex> c;
  double residual;
};

/// Least-squares multiplier of degree K with c(1) = 1 minimising the
/// negative-frequency content of zeta c d(rho)(f).
inline MultiplierFit fit_multiplier(double lambda, const AnalyticDisc& disc, int K, int M) {
  const auto zetas = roots_of_unity(M);
  const auto q = scaled_gradient_samples(lambda, disc, zetas);
  const int neg = M / 2;  // frequencies -1 .. -(M/2) are unambiguous at alias-free M
  // Column b: negative coefficients produced by basis function b of c.
  // Basis: 1, zeta^k + zeta^-k, i (zeta^k - zeta^-k), k = 1..K.
  const int nb = 2 * K + 1;
  Eigen::MatrixXd cols(4 * neg, nb);
  std::vector<Complex> h(static_cast<std::size_t>(M));
  for (int b = 0; b < nb; ++b) {
    for (int comp = 0; comp < 2; ++comp) {
      for (int j = 0; j < M; ++j) {
        const Complex zeta = zetas[static_cast<std::size_t>(j)];
        Complex phi = 1.0;
        if (b > 0) {
          const int k = (b + 1) / 2;
          const Complex zk = std::pow(zeta, k);
          phi = (b % 2 == 1) ? zk + std::conj(zk) : kI * (zk - std::conj(zk));
        }
        h[static_cast<std::size_t>(j)] = phi * q[static_cast<std::size_t>(comp)][static_cast<std::size_t>(j)];
      }
      const auto coeffs = fourier_coefficients(h);
      for (int m = 1; m <= neg; ++m) {
        const Complex a = coefficient_at(coeffs, -m);
        cols(4 * (m - 1) + 2 * comp, b) = a.real();
        cols(4 * (m - 1) + 2 * comp + 1, b) = a.imag();
      }
    }
  }
  // c(1) = x_0 + 2 sum_k x_{2k-1} = 1: eliminate x_0.
  Eigen::VectorXd rhs = -cols.col(0);
  Eigen::MatrixXd reduced(cols.rows(), nb - 1);
  for (int b = 1; b < nb; ++b) {
    reduced.col(b - 1) = cols.col(b) - (b % 2 == 1 ? 2.0 : 0.0) * cols.col(0);
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(nb - 1);
  if (nb > 1) y = reduced.completeOrthogonalDecomposition().solve(rhs);
  Eigen::VectorXd x(nb);
  x(0) = 1.0;
  for (int b = 1; b < nb; ++b) {
    x(b) = y(b - 1);
    if (b % 2 == 1) x(0) -= 2.0 * y(b - 1);
  }
  const Eigen::VectorXd r = cols * x;
  double worst = 0.0;
  for (Eigen::Index i = 0; i + 1 < r.size(); i += 2) worst = std::max(worst, std::hypot(r(i), r(i + 1)));

  MultiplierFit fit{std::vector<Complex>(static_cast<std::size_t>(K + 1)), worst};
  fit.c[0] = x(0);
  for (int k = 1; k <= K; ++k) fit.c[static_cast<std::size_t>(k)] = Complex(x(2 * k - 1), x(2 * k));
  return fit;
}

}  // namespace detail

/// Searches for a real trigonometric multiplier c of degree <= K, c(1) = 1,
/// such that zeta c(zeta) d(rho)(f(zeta)) extends holomorphically to the disc.
/// If degree K fails but a larger degree succeeds, the verdict is
/// degree_too_small rather than not_stationary.
inline StationarityResult stationarity_test_fourier(const DomainParams& params, const AnalyticDisc& disc, int M,
                                                    int K, const StationarityOptions& opts = {}) {
  params.validate();
  const int N = disc.degree();
  detail::require(K >= 0, "multiplier degree K must be nonnegative");
  detail::require(M >= 8 * (N + K), "stationarity test needs M >= 8(N+K)");

  StationarityResult out;
  out.attachment = boundary_residual(params, disc, std::max(M, 4 * N + 1));
  if (out.attachment >= opts.attach_tol) {
    out.verdict = StationarityVerdict::not_attached;
    return out;
  }

  const int Meff = detail::alias_free_size(N, K, M);
  out.fourier_size = Meff;
  auto fit = detail::fit_multiplier(params.lambda, disc, K, Meff);
  out.c_coeffs = fit.c;
  out.residual = fit.residual;

  double cmin = std::numeric_limits<double>::infinity();
  for (const Complex& zeta : roots_of_unity(Meff)) cmin = std::min(cmin, std::abs(detail::multiplier_at(fit.c, zeta)));
  out.min_multiplier = cmin;

  if (fit.residual < opts.tol && cmin > opts.tol) {
    out.is_stationary = true;
    out.verdict = StationarityVerdict::stationary;
    return out;
  }
  const int Kbig = K + 2 * N + 8;
  const auto big = detail::fit_multiplier(params.lambda, disc, Kbig, detail::alias_free_size(N, Kbig, M));
  double bigmin = std::numeric_limits<double>::infinity();
  for (const Complex& zeta : roots_of_unity(64)) bigmin = std::min(bigmin, std::abs(detail::multiplier_at(big.c, zeta)));
  out.verdict = (big.residual < opts.tol && bigmin > opts.tol) ? StationarityVerdict::degree_too_small
                                                               : StationarityVerdict::not_stationary;
  return out;
}

/// Holomorphic lift (f, ft) with ft the nonnegative-frequency part of
/// zeta c(zeta) d(rho)(f(zeta)).
inline LiftedDisc lift_from_multiplier(const DomainParams& params, const AnalyticDisc& disc,
                                       const std::vector<Complex>& c_coeffs, double tol = 1e-8) {
  params.validate();
  detail::require(!c_coeffs.empty(), "multiplier coefficients are empty");
  const int N = disc.degree();
  const int K = static_cast<int>(c_coeffs.size()) - 1;
  const int M = detail::alias_free_size(N, K, 8 * (N + K + 1));
  const auto zetas = roots_of_unity(M);
  auto q = detail::scaled_gradient_samples(params.lambda, disc, zetas);
  const int top = 3 * N + 1 + K;  // highest frequency present
  LiftedDisc lift(std::max(N, top));
  for (std::size_t n = 0; n < disc.coeffs.size(); ++n) {
    lift.coeffs[n][0] = disc.coeffs[n][0];
    lift.coeffs[n][1] = disc.coeffs[n][1];
  }
  for (std::size_t comp = 0; comp < 2; ++comp) {
    for (std::size_t j = 0; j < zetas.size(); ++j) q[comp][j] *= detail::multiplier_at(c_coeffs, zetas[j]);
    const auto coeffs = fourier_coefficients(q[comp]);
    double neg = 0.0;
    for (int m = 1; m <= M / 2; ++m) neg = std::max(neg, std::abs(coefficient_at(coeffs, -m)));
    if (neg >= tol) {
      throw NumericalError("lift_from_multiplier: multiplier leaves negative Fourier modes of size " +
                           std::to_string(neg));
    }
    for (int n = 0; n <= top; ++n) lift.coeffs[static_cast<std::size_t>(n)][2 + comp] = coefficient_at(coeffs, n);
  }
  return lift;
}

}  // namespace holodisc
