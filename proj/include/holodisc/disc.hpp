#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "holodisc/domain.hpp"
#include "holodisc/errors.hpp"
#include "holodisc/fourier.hpp"

namespace holodisc {

/// Holomorphic map Delta -> C^2 stored by its Taylor coefficients at 0:
/// coeffs[n] = (n-th coefficient of f1, n-th coefficient of f2).
struct AnalyticDisc {
  std::vector<std::array<Complex, 2>> coeffs{{Complex{}, Complex{}}};

  AnalyticDisc() = default;
  explicit AnalyticDisc(int degree)
      : coeffs(static_cast<std::size_t>(std::max(degree, 0) + 1), {Complex{}, Complex{}}) {}

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  /// The disc zeta -> (zeta, 0).
  static AnalyticDisc reference() {
    AnalyticDisc d(1);
    d.coeffs[1][0] = 1.0;
    return d;
  }
};

/// Parameters of the rotated cubic family
/// (e^{i theta} zeta, e^{2 i theta} zeta (a1 + a2 zeta + conj(a1) zeta^2)).
struct LeminsideParams {
  double theta = 0.0;
  Complex a1{};
  double a2 = 0.0;
};

/// Parameters of the geodesics through (0,0) and (z0, z1), z0 = e^{i theta0} x0.
struct GeodesicParams {
  double theta0 = 0.0;
  double x0 = 0.5;
  Complex z1{};
  Complex b{};

  Complex z0() const { return std::polar(x0, theta0); }
};

namespace detail {

template <class T>
T horner(const std::vector<std::array<Complex, 2>>& c, std::size_t comp, T zeta) {
  T acc = c.back()[comp];
  for (std::size_t n = c.size() - 1; n-- > 0;) acc = acc * zeta + c[n][comp];
  return acc;
}

inline void require_angle(double theta, const char* name) {
  require(theta >= 0.0 && theta < kTwoPi, std::string(name) + " must lie in [0, 2 pi)");
}

/// Tolerance of the reality constraint on the middle coefficient.
inline constexpr double kRealityTol = 1e-12;

}  // namespace detail

inline Point2 eval(const AnalyticDisc& disc, Complex zeta) {
  detail::require(std::abs(zeta) <= 1.0 + 1e-12, "disc evaluation requires |zeta| <= 1");
  return {detail::horner(disc.coeffs, 0, zeta), detail::horner(disc.coeffs, 1, zeta)};
}

/// Derivative of the disc at zeta (no domain restriction; used internally).
inline Point2 eval_derivative(const AnalyticDisc& disc, Complex zeta) {
  Complex d1{}, d2{};
  for (int n = disc.degree(); n >= 1; --n) {
    d1 = d1 * zeta + static_cast<double>(n) * disc.coeffs[static_cast<std::size_t>(n)][0];
    d2 = d2 * zeta + static_cast<double>(n) * disc.coeffs[static_cast<std::size_t>(n)][1];
  }
  return {d1, d2};
}

inline std::vector<Point2> boundary_samples(const AnalyticDisc& disc, int M) {
  detail::require(M >= 2 * disc.degree() + 1, "boundary_samples needs M >= 2N+1");
  std::vector<Point2> out;
  out.reserve(static_cast<std::size_t>(M));
  for (const Complex& zeta : roots_of_unity(M)) out.push_back(eval(disc, zeta));
  return out;
}

inline void validate(double eps, const LeminsideParams& p) {
  DomainParams{eps, 1.0}.validate();
  detail::require_angle(p.theta, "theta");
  detail::require(2.0 * std::abs(p.a1) + std::abs(p.a2) < w_radius_for(eps),
                  "leminside parameters need 2|a1| + |a2| < 1/(4(1+eps)^3)");
}

inline AnalyticDisc disc_leminside(double eps, const LeminsideParams& p) {
  validate(eps, p);
  const Complex rot = std::polar(1.0, p.theta);
  const Complex rot2 = rot * rot;
  AnalyticDisc d(3);
  d.coeffs[1] = {rot, rot2 * p.a1};
  d.coeffs[2] = {0.0, rot2 * p.a2};
  d.coeffs[3] = {0.0, rot2 * std::conj(p.a1)};
  return d;
}

/// Radius of the admissible b-disc for a given z1/z0^2.
inline double geodesic_b_radius(double eps, Complex z1_over_z0sq) {
  return 0.2 * (w_radius_for(eps) - std::abs(z1_over_z0sq));
}

/// (a1, a2) of the leminside disc that coincides with the geodesic; a2 is
/// returned complex and is real exactly when the parameters are admissible.
inline std::pair<Complex, Complex> geodesic_coefficients(const GeodesicParams& p) {
  const Complex z0 = p.z0();
  const double x2 = p.x0 * p.x0;
  const Complex a1 = p.x0 * (-p.b + std::conj(p.b) * x2);
  const Complex a2 = (1.0 - x2 * x2) * p.b + p.z1 / (z0 * z0);
  return {a1, a2};
}

inline void validate(double eps, const GeodesicParams& p) {
  DomainParams{eps, 1.0}.validate();
  detail::require_angle(p.theta0, "theta0");
  detail::require(p.x0 > 0.0 && p.x0 < 1.0, "x0 must lie in (0, 1)");
  const Complex z0 = p.z0();
  detail::require(std::abs(p.z1) < p.x0 * p.x0 * w_radius_for(eps), "need |z1| < |z0|^2/(4(1+eps)^3)");
  const Complex u = p.z1 / (z0 * z0);
  detail::require(std::abs(p.b) < geodesic_b_radius(eps, u), "need |b| < eps1");
  const auto [a1, a2] = geodesic_coefficients(p);
  (void)a1;
  detail::require(std::abs(a2.imag()) <= detail::kRealityTol,
                  "need (1 - x0^4) b + z1/z0^2 real");
}

inline AnalyticDisc disc_geodesic(double eps, const GeodesicParams& p) {
  validate(eps, p);
  const Complex rot = std::polar(1.0, p.theta0);
  const Complex rot2 = rot * rot;
  const auto [a1, a2] = geodesic_coefficients(p);
  AnalyticDisc d(3);
  d.coeffs[1] = {rot, rot2 * a1};
  d.coeffs[2] = {0.0, rot2 * a2};
  d.coeffs[3] = {0.0, rot2 * p.x0 * (-std::conj(p.b) + p.b * p.x0 * p.x0)};
  return d;
}

/// g(zeta) = (zeta, c zeta (z0 - (1 + |z0|^2) zeta + conj(z0) zeta^2)), a
/// disc with g(0) = 0 and g'(0) = (1, c z0).
inline AnalyticDisc disc_cubic_extremal(double eps, double c, Complex z0) {
  DomainParams{eps, 1.0}.validate();
  const double s = 1.0 + eps;
  detail::require(c >= 0.0 && c < 1.0 / (16.0 * s * s * s), "need 0 <= c < 1/(16(1+eps)^3)");
  detail::require(std::abs(z0) > 0.0 && std::abs(z0) < 1.0, "need z0 in the punctured unit disc");
  AnalyticDisc d(3);
  d.coeffs[1] = {1.0, c * z0};
  d.coeffs[2] = {0.0, -c * (1.0 + std::norm(z0))};
  d.coeffs[3] = {0.0, c * std::conj(z0)};
  return d;
}

/// max over the M-th roots of unity of |rho^lambda(f(zeta))|.
inline double boundary_residual(const DomainParams& params, const AnalyticDisc& disc, int M) {
  detail::require(M >= 4 * disc.degree() + 1, "boundary_residual needs M >= 4N+1");
  double worst = 0.0;
  for (const Complex& zeta : roots_of_unity(M)) {
    worst = std::max(worst, std::abs(rho(params, eval(disc, zeta))));
  }
  return worst;
}

/// Rotation angle in [0, 2 pi) of a disc whose first coordinate is
/// e^{i theta} zeta; rejects anything else.
inline double rotation_angle(const AnalyticDisc& disc, double tol = 1e-12) {
  detail::require(disc.degree() >= 1, "first coordinate is not a rotation");
  for (int n = 0; n <= disc.degree(); ++n) {
    if (n == 1) continue;
    detail::require(std::abs(disc.coeffs[static_cast<std::size_t>(n)][0]) <= tol,
                    "first coordinate is not a rotation");
  }
  const Complex r = disc.coeffs[1][0];
  detail::require(std::abs(std::abs(r) - 1.0) <= tol, "first coordinate is not a rotation");
  double theta = std::arg(r);
  if (theta < 0.0) theta += kTwoPi;
  if (theta >= kTwoPi) theta -= kTwoPi;
  return theta;
}

/// Inverse of the geodesic parametrization: returns (z1, b) with
/// z1 the second coordinate at the preimage x0 of z0.
inline std::pair<Complex, Complex> recover_params(const AnalyticDisc& disc, Complex z0) {
  const double x0 = std::abs(z0);
  detail::require(x0 > 0.0 && x0 < 1.0, "z0 must lie in the punctured unit disc");
  detail::require(disc.degree() <= 3, "geodesic family discs have degree <= 3");
  const double theta = rotation_angle(disc);
  const Complex rot = std::polar(1.0, theta);
  const Complex rot_z0 = z0 / x0;
  detail::require(std::abs(rot - rot_z0) <= 1e-12, "disc rotation does not match arg(z0)");
  const Complex z1 = eval(disc, Complex(x0)).w;
  const Complex f2p = disc.coeffs[1][1];
  const double x4 = x0 * x0 * x0 * x0;
  const Complex b = -(f2p * std::conj(rot) / z0 + std::conj(f2p) * rot * z0) / (1.0 - x4);
  return {z1, b};
}

struct ChartSample {
  std::array<double, 3> coords{};  // (Re z1/z0^2, Re b, Im b)
  Complex z1{};
  Complex b{};
  AnalyticDisc disc;
};

/// Point of the reality-constrained parameter set for chart coordinates
/// t = (Re u, Re b, Im b), u = z1/z0^2, Im u = -(1 - x0^4) Im b.
inline std::pair<Complex, Complex> chart_point(double theta0, double x0, const std::array<double, 3>& t) {
  const Complex z0 = std::polar(x0, theta0);
  const double x4 = x0 * x0 * x0 * x0;
  const Complex u(t[0], -(1.0 - x4) * t[2]);
  return {u * z0 * z0, Complex(t[1], t[2])};
}

/// Samples of the three-parameter geodesic family through z0 = e^{i theta0} x0:
/// the chart centre followed by 2 n_samples points along each coordinate axis.
inline std::vector<ChartSample> family_chart(double eps, double theta0, double x0, int n_samples) {
  detail::require(n_samples >= 0, "n_samples must be nonnegative");
  const double step = w_radius_for(eps) / 20.0;
  std::vector<ChartSample> out;
  auto push = [&](const std::array<double, 3>& t) {
    const auto [z1, b] = chart_point(theta0, x0, t);
    out.push_back({t, z1, b, disc_geodesic(eps, {theta0, x0, z1, b})});
  };
  push({0.0, 0.0, 0.0});
  for (int axis = 0; axis < 3; ++axis) {
    for (int k = 1; k <= n_samples; ++k) {
      for (double sign : {1.0, -1.0}) {
        std::array<double, 3> t{};
        t[static_cast<std::size_t>(axis)] = sign * step * k / n_samples;
        push(t);
      }
    }
  }
  return out;
}

/// Real coefficient vector (Re, Im of every Taylor coefficient of both coordinates).
inline Eigen::VectorXd coefficient_vector(const AnalyticDisc& disc, int degree) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(4 * (degree + 1));
  for (int n = 0; n <= std::min(degree, disc.degree()); ++n) {
    for (int c = 0; c < 2; ++c) {
      const Complex a = disc.coeffs[static_cast<std::size_t>(n)][static_cast<std::size_t>(c)];
      v(4 * n + 2 * c) = a.real();
      v(4 * n + 2 * c + 1) = a.imag();
    }
  }
  return v;
}

/// Numerical rank of a matrix, counting singular values above rel_tol * sigma_max.
inline int numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > rel_tol * s(0) ? 1 : 0;
  return r;
}

/// Rank of the chart differential at chart coordinates t, by central
/// differences of the coefficient vector.
inline int family_chart_rank(double eps, double theta0, double x0, const std::array<double, 3>& t,
                             double h = 1e-6, double rel_tol = 1e-8) {
  Eigen::MatrixXd jac(16, 3);
  for (int k = 0; k < 3; ++k) {
    auto tp = t, tm = t;
    tp[static_cast<std::size_t>(k)] += h;
    tm[static_cast<std::size_t>(k)] -= h;
    const auto [z1p, bp] = chart_point(theta0, x0, tp);
    const auto [z1m, bm] = chart_point(theta0, x0, tm);
    jac.col(k) = (coefficient_vector(disc_geodesic(eps, {theta0, x0, z1p, bp}), 3) -
                  coefficient_vector(disc_geodesic(eps, {theta0, x0, z1m, bm}), 3)) /
                 (2.0 * h);
  }
  return numerical_rank(jac, rel_tol);
}

}  // namespace holodisc
