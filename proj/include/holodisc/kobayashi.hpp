#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include "holodisc/disc.hpp"
#include "holodisc/domain.hpp"
#include "holodisc/errors.hpp"
#include "holodisc/fourier.hpp"

namespace holodisc {

namespace detail {
inline void require_in_unit_disc(Complex zeta) {
  require(std::abs(zeta) < 1.0, "point must lie in the open unit disc");
}
}  // namespace detail

/// Poincare distance on the unit disc, normalised so that d(0, x) = artanh(x).
inline double poincare_distance(Complex a, Complex b) {
  detail::require_in_unit_disc(a);
  detail::require_in_unit_disc(b);
  const double t = std::abs((a - b) / (1.0 - std::conj(b) * a));
  return std::atanh(std::min(t, 1.0));
}

inline double poincare_metric(Complex zeta, Complex v) {
  detail::require_in_unit_disc(zeta);
  return std::abs(v) / (1.0 - std::norm(zeta));
}

/// Kobayashi distance from (0,0) to (z0, z1) for |z1| < |z0|^2/(4(1+eps)^3):
/// the projection to the first coordinate and the geodesic discs squeeze it
/// to artanh|z0|.
inline double distance_from_origin(const DomainParams& params, Complex z0, Complex z1) {
  params.validate();
  detail::require(params.lambda == 1.0, "closed-form distance holds for lambda = 1 only");
  const double x0 = std::abs(z0);
  detail::require(x0 > 0.0 && x0 < 1.0, "z0 must lie in the punctured unit disc");
  detail::require(std::abs(z1) < x0 * x0 * params.w_radius(), "need |z1| < |z0|^2/(4(1+eps)^3)");
  return std::atanh(x0);
}

/// Lower bound d_Omega(p, q) >= d_Delta(z_p, z_q) from the retraction onto
/// the first coordinate.
inline double bound_via_projection(const DomainParams& params, const Point2& p, const Point2& q) {
  params.validate();
  detail::require(in_domain(params, p) && in_domain(params, q), "points must lie in Omega");
  return poincare_distance(p.z, q.z);
}

/// Checks that a disc maps the closed unit disc into the closure of Omega on
/// a boundary sample grid: rho <= tol and inside the closed polydisc.
inline bool disc_in_closure(const DomainParams& params, const AnalyticDisc& disc, double tol = 1e-12) {
  const int M = std::max(64, 16 * (disc.degree() + 1));
  for (const Complex& zeta : roots_of_unity(M)) {
    const Point2 p = eval(disc, zeta);
    if (rho(params, p) > tol) return false;
    if (std::abs(p.z) > params.z_radius() || std::abs(p.w) > params.w_radius()) return false;
  }
  return true;
}

/// Upper bound d_Omega(f(a), f(b)) <= d_Delta(a, b) for a disc f in Omega.
inline double bound_via_disc(const DomainParams& params, const AnalyticDisc& disc, Complex a, Complex b) {
  params.validate();
  detail::require(disc_in_closure(params, disc), "disc leaves the closure of Omega on the sample grid");
  return poincare_distance(a, b);
}

/// Geodesic of the leminside family through (0, 0) and (z0, z1), with the
/// smallest admissible b (purely imaginary, cancelling Im z1/z0^2); empty when
/// that b falls outside the admissible disc.
inline std::optional<GeodesicParams> geodesic_through(double eps, Complex z0, Complex z1) {
  const double x0 = std::abs(z0);
  detail::require(x0 > 0.0 && x0 < 1.0, "z0 must lie in the punctured unit disc");
  double theta0 = std::arg(z0);
  if (theta0 < 0.0) theta0 += kTwoPi;
  if (theta0 >= kTwoPi) theta0 -= kTwoPi;
  const Complex u = z1 / (z0 * z0);
  const double x4 = x0 * x0 * x0 * x0;
  GeodesicParams p{theta0, x0, z1, Complex(0.0, -u.imag() / (1.0 - x4))};
  if (std::abs(z1) >= x0 * x0 * w_radius_for(eps) || std::abs(p.b) >= geodesic_b_radius(eps, u)) return std::nullopt;
  return p;
}

struct ExtremalReport {
  double mu_best = 0.0;
  AnalyticDisc disc;
  double feasibility_margin = 0.0;  // -max rho over the boundary samples
  long evaluations = 0;
};

struct ExtremalOptions {
  double margin = 1e-6;  // required slack below the boundary
  long budget = 100000;  // objective evaluations
  std::uint64_t seed = 0;
  int restarts = 8;
};

namespace detail {

/// Feasibility of the sampled disc: rho <= -margin and strictly inside the
/// polydisc at every sample point.
struct ExtremalProblem {
  DomainParams params;
  int degree;
  double c;
  Complex z0;
  double margin;
  std::vector<Complex> samples;
  long evaluations = 0;

  /// Coefficient layout: x = (Re, Im) of a_n, n = 2..N for f1, then for f2.
  AnalyticDisc disc_for(const double* x, double r) const {
    AnalyticDisc d(degree);
    d.coeffs[1] = {r, r * c * z0};
    double rn = r;
    for (int n = 2; n <= degree; ++n) {
      rn *= r;
      const std::size_t k = static_cast<std::size_t>(n - 2);
      const std::size_t off = static_cast<std::size_t>(degree - 1);
      d.coeffs[static_cast<std::size_t>(n)] = {rn * Complex(x[2 * k], x[2 * k + 1]),
                                               rn * Complex(x[2 * (off + k)], x[2 * (off + k) + 1])};
    }
    return d;
  }

  double worst_rho(const AnalyticDisc& d) const {
    double worst = -std::numeric_limits<double>::infinity();
    for (const Complex& zeta : samples) {
      const Point2 p = eval(d, zeta);
      if (std::abs(p.z) >= params.z_radius() - margin || std::abs(p.w) >= params.w_radius() - margin) {
        return std::numeric_limits<double>::infinity();
      }
      worst = std::max(worst, rho(params, p));
    }
    return worst;
  }

  bool feasible(const double* x, double r) const { return worst_rho(disc_for(x, r)) <= -margin; }

  /// Largest shrink factor r in [0, 1] for which zeta -> f(r zeta) is feasible.
  /// rho o f is subharmonic while f stays in the polydisc, so feasibility is
  /// monotone in r and bisection applies; only feasible values are returned.
  double best_scale(const double* x) {
    ++evaluations;
    if (feasible(x, 1.0)) return 1.0;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 48; ++it) {
      const double mid = 0.5 * (lo + hi);
      (feasible(x, mid) ? lo : hi) = mid;
    }
    return lo;
  }
};

inline double extremal_objective(const gsl_vector* v, void* raw) {
  auto* prob = static_cast<ExtremalProblem*>(raw);
  return -prob->best_scale(v->data);
}

}  // namespace detail

/// Maximises mu over degree-N discs with f(0) = 0, f'(0) = mu (1, c z0) that
/// stay inside Omega_lambda with the given margin on 8N boundary samples.
/// Every candidate is made feasible by shrinking, so mu_best is always
/// attained by the returned disc. Nelder-Mead with seeded restarts.
inline ExtremalReport extremal_search(const DomainParams& params, double c, Complex z0, int degree,
                                      const ExtremalOptions& opts = {}) {
  params.validate();
  const double s = 1.0 + params.epsilon;
  detail::require(c >= 0.0 && c < 1.0 / (16.0 * s * s * s), "need 0 <= c < 1/(16(1+eps)^3)");
  detail::require(std::abs(z0) < 1.0, "z0 must lie in the unit disc");
  detail::require(degree >= 1, "degree must be >= 1");
  detail::require(opts.budget >= 1, "budget must be positive");

  detail::ExtremalProblem prob{params, degree, c, z0, opts.margin, roots_of_unity(8 * degree)};
  const std::size_t dim = static_cast<std::size_t>(4 * (degree - 1));

  std::vector<double> best_x(dim, 0.0);
  double best_mu = prob.best_scale(best_x.data());

  if (dim > 0) {
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double scale = 0.1 * params.w_radius();

    gsl_multimin_function fn{&detail::extremal_objective, dim, &prob};
    gsl_multimin_fminimizer* solver = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
    gsl_vector* x = gsl_vector_alloc(dim);
    gsl_vector* step = gsl_vector_alloc(dim);

    int stale = 0;
    for (int restart = 0; restart < opts.restarts && prob.evaluations < opts.budget && stale < 3; ++restart) {
      const double spread = restart == 0 ? 0.0 : scale * std::pow(0.5, restart);
      for (std::size_t i = 0; i < dim; ++i) {
        gsl_vector_set(x, i, best_x[i] + spread * gauss(rng));
        gsl_vector_set(step, i, scale * std::pow(0.5, restart));
      }
      gsl_multimin_fminimizer_set(solver, &fn, x, step);
      while (prob.evaluations < opts.budget) {
        if (gsl_multimin_fminimizer_iterate(solver) != GSL_SUCCESS) break;
        if (gsl_multimin_fminimizer_size(solver) < 1e-13) break;
      }
      const double mu = -gsl_multimin_fminimizer_minimum(solver);
      if (mu > best_mu + 1e-13) {
        best_mu = mu;
        for (std::size_t i = 0; i < dim; ++i) best_x[i] = gsl_vector_get(gsl_multimin_fminimizer_x(solver), i);
        stale = 0;
      } else {
        ++stale;
      }
    }
    gsl_vector_free(step);
    gsl_vector_free(x);
    gsl_multimin_fminimizer_free(solver);
  }

  if (best_mu < 0.9) {
    throw NumericalError("extremal_search: budget exhausted before reaching a feasible mu >= 0.9");
  }
  ExtremalReport report;
  report.mu_best = best_mu;
  report.disc = prob.disc_for(best_x.data(), best_mu);
  report.feasibility_margin = -prob.worst_rho(report.disc);
  report.evaluations = prob.evaluations;
  return report;
}

}  // namespace holodisc
