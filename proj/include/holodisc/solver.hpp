#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "holodisc/disc.hpp"
#include "holodisc/domain.hpp"
#include "holodisc/dual.hpp"
#include "holodisc/errors.hpp"
#include "holodisc/fourier.hpp"
#include "holodisc/rhfactor.hpp"
#include "holodisc/stationary.hpp"

namespace holodisc {

inline int default_collocation(int N) { return 4 * (N + 1) + 16; }

/// Real unknown vector of a lift truncated at degree N:
/// index (component * (N + 1) + n) * 2 + {0: Re, 1: Im}.
inline Eigen::VectorXd pack(const LiftedDisc& lift, int N) {
  detail::require(lift.degree() <= N, "lift degree exceeds the truncation degree");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(8 * (N + 1));
  for (int c = 0; c < 4; ++c) {
    for (int n = 0; n <= lift.degree(); ++n) {
      const Complex a = lift.coeffs[static_cast<std::size_t>(n)][static_cast<std::size_t>(c)];
      x(2 * (c * (N + 1) + n)) = a.real();
      x(2 * (c * (N + 1) + n) + 1) = a.imag();
    }
  }
  return x;
}

inline LiftedDisc unpack(const Eigen::VectorXd& x, int N) {
  detail::require(x.size() == 8 * (N + 1), "unknown vector has the wrong length");
  LiftedDisc lift(N);
  for (int c = 0; c < 4; ++c) {
    for (int n = 0; n <= N; ++n) {
      lift.coeffs[static_cast<std::size_t>(n)][static_cast<std::size_t>(c)] =
          Complex(x(2 * (c * (N + 1) + n)), x(2 * (c * (N + 1) + n) + 1));
    }
  }
  return lift;
}

/// rho_1..rho_4 at the M-th roots of unity; entry k * M + j is rho_{k+1}(zeta_j).
inline Eigen::VectorXd residual_system(const DomainParams& params, const LiftedDisc& lift, int M) {
  params.validate();
  detail::require(M >= 1, "M must be positive");
  Eigen::VectorXd r(4 * M);
  const auto zetas = roots_of_unity(M);
  for (int j = 0; j < M; ++j) {
    const auto v = conormal_values(params.lambda, zetas[static_cast<std::size_t>(j)],
                                   eval(lift, zetas[static_cast<std::size_t>(j)]));
    for (int k = 0; k < 4; ++k) r(k * M + j) = v[static_cast<std::size_t>(k)];
  }
  return r;
}

/// Jacobian of residual_system with respect to the packed coefficients of
/// degree <= N, by forward-mode differentiation of the defining functions.
inline Eigen::MatrixXd residual_jacobian(const DomainParams& params, const LiftedDisc& lift, int N, int M) {
  params.validate();
  detail::require(lift.degree() <= N, "lift degree exceeds the truncation degree");
  const auto zetas = roots_of_unity(M);
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(4 * M, 8 * (N + 1));
  for (int j = 0; j < M; ++j) {
    const Complex zeta = zetas[static_cast<std::size_t>(j)];
    const CotangentPoint p = eval(lift, zeta);
    const std::array<Complex, 4> base{p.z, p.w, p.zt, p.wt};
    // d[c][part][k]: derivative of rho_k along the real (part 0) or
    // imaginary (part 1) unit direction in component c
    double d[4][2][4];
    for (int c = 0; c < 4; ++c) {
      for (int part = 0; part < 2; ++part) {
        std::array<Dual, 4> u;
        for (int q = 0; q < 4; ++q) u[static_cast<std::size_t>(q)] = Dual(base[static_cast<std::size_t>(q)]);
        u[static_cast<std::size_t>(c)].d = part == 0 ? Complex(1.0) : kI;
        const auto r = conormal_defining<Dual>(params.lambda, zeta, u[0], u[1], u[2], u[3]);
        for (int k = 0; k < 4; ++k) d[c][part][k] = r[static_cast<std::size_t>(k)].d.real();
      }
    }
    Complex zn = 1.0;
    for (int n = 0; n <= N; ++n) {
      for (int c = 0; c < 4; ++c) {
        const Eigen::Index col = 2 * (c * (N + 1) + n);
        for (int k = 0; k < 4; ++k) {
          jac(k * M + j, col) = d[c][0][k] * zn.real() + d[c][1][k] * zn.imag();
          jac(k * M + j, col + 1) = -d[c][0][k] * zn.imag() + d[c][1][k] * zn.real();
        }
      }
      zn *= zeta;
    }
  }
  return jac;
}

struct TangentReport {
  int dimension = 0;
  double gap = 0.0;  // smallest kept / largest discarded singular value
  bool determinate = false;
  Eigen::VectorXd tail;  // the smallest singular values, ascending
};

namespace detail {

inline TangentReport tangent_from_spectrum(const Eigen::VectorXd& s, Eigen::Index cols, double rank_tol,
                                           double gap_tol) {
  TangentReport rep;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) rank += s(i) > rank_tol * s(0) ? 1 : 0;
  rep.dimension = static_cast<int>(cols - rank);
  const double kept = rank > 0 ? s(rank - 1) : 0.0;
  const double dropped = rank < s.size() ? s(rank) : 0.0;
  rep.gap = dropped > 0.0 ? kept / dropped : std::numeric_limits<double>::infinity();
  rep.determinate = rep.gap >= gap_tol;
  const Eigen::Index nt = std::min<Eigen::Index>(s.size(), std::max<Eigen::Index>(rep.dimension + 4, 12));
  rep.tail = s.tail(nt).reverse();
  return rep;
}

}  // namespace detail

/// Kernel dimension of the unpinned Jacobian at the lift together with the
/// spectral gap that separates it from the rest of the spectrum.
inline TangentReport tangent_analysis(const DomainParams& params, const LiftedDisc& lift, int N = 12, int M = 0,
                                      double gap_tol = 1e3, double rank_tol = 1e-8) {
  if (M == 0) M = default_collocation(N);
  detail::require(M >= 4 * (N + 1) + 8, "collocation needs M >= 4(N+1)+8");
  const Eigen::MatrixXd jac = residual_jacobian(params, lift, N, M);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(jac);
  return detail::tangent_from_spectrum(svd.singularValues(), jac.cols(), rank_tol, gap_tol);
}

/// As tangent_analysis, but an indeterminate gap is an error that carries
/// the spectrum tail.
inline int tangent_dimension(const DomainParams& params, const LiftedDisc& lift, int N = 12, int M = 0,
                             double gap_tol = 1e3) {
  const TangentReport rep = tangent_analysis(params, lift, N, M, gap_tol);
  if (!rep.determinate) {
    std::ostringstream msg;
    msg << "tangent dimension indeterminate: gap " << rep.gap << ", spectrum tail";
    for (Eigen::Index i = 0; i < rep.tail.size(); ++i) msg << ' ' << rep.tail(i);
    throw NumericalError(msg.str());
  }
  return rep.dimension;
}

/// Orthonormal basis (columns) of the eight right singular vectors of the
/// Jacobian at the reference lift with the smallest singular values.
inline Eigen::MatrixXd pin_basis(const DomainParams& params, int N = 12, int M = 0) {
  if (M == 0) M = default_collocation(N);
  const Eigen::MatrixXd jac = residual_jacobian(params, LiftedDisc::reference(), N, M);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(8);
}

struct SolveReport {
  LiftedDisc solution;
  double residual = 0.0;  // max over collocation points of max |rho_k|
  int iterations = 0;
  int tangent_dim = 0;
  double jacobian_gap = 0.0;
  std::array<double, 8> pinned{};
};

struct SolveOptions {
  int degree = 12;
  int collocation = 0;  // 0: 4(N+1)+16
  double tol = 1e-10;
  int max_iterations = 50;
};

/// Gauss-Newton on the collocated boundary system near the reference lift
/// with eight affine pins <x - x_ref, e_j> = pins_j, e_j from pin_basis.
/// Steps are halved while the residual norm does not decrease.
inline SolveReport solve_near(const DomainParams& params, const LiftedDisc& initial, const std::array<double, 8>& pins,
                              const SolveOptions& opts = {}) {
  params.validate();
  const int N = opts.degree;
  detail::require(N >= 1, "degree must be >= 1");
  const int M = opts.collocation == 0 ? default_collocation(N) : opts.collocation;
  detail::require(M >= 4 * (N + 1) + 8, "collocation needs M >= 4(N+1)+8");
  detail::require(opts.tol > 0.0, "tolerance must be positive");
  for (double p : pins) detail::require(std::isfinite(p), "pins must be finite");

  const Eigen::VectorXd x_ref = pack(LiftedDisc::reference(), N);
  Eigen::VectorXd x = pack(initial, N);
  detail::require((x - x_ref).lpNorm<Eigen::Infinity>() <= 0.1, "initial lift must lie within 0.1 of the reference");
  const Eigen::MatrixXd E = pin_basis(params, N, M);
  const Eigen::Map<const Eigen::VectorXd> target(pins.data(), 8);

  auto full_residual = [&](const Eigen::VectorXd& y, Eigen::VectorXd& out) -> bool {
    try {
      out.resize(4 * M + 8);
      out.head(4 * M) = residual_system(params, unpack(y, N), M);
      out.tail(8) = E.transpose() * (y - x_ref) - target;
      return true;
    } catch (const ChartError&) {
      return false;
    }
  };

  Eigen::VectorXd F;
  if (!full_residual(x, F)) throw NumericalError("initial lift leaves the conormal chart");

  SolveReport rep;
  int it = 0;
  for (;; ++it) {
    const double res = F.head(4 * M).lpNorm<Eigen::Infinity>();
    const double pin_res = F.tail(8).lpNorm<Eigen::Infinity>();
    if (res < opts.tol && pin_res < opts.tol) break;
    if (it >= opts.max_iterations) {
      throw NumericalError("solve_near did not converge in " + std::to_string(opts.max_iterations) +
                           " iterations, residual " + std::to_string(res));
    }
    Eigen::MatrixXd A(4 * M + 8, x.size());
    A.topRows(4 * M) = residual_jacobian(params, unpack(x, N), N, M);
    A.bottomRows(8) = E.transpose();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) <= 1e-10 * s(0)) {
      throw NumericalError("pinned Jacobian is rank deficient (bad pins or degenerate lambda)");
    }
    const Eigen::VectorXd dx = svd.solve(-F);
    const double f0 = F.squaredNorm();
    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h < 30; ++h, t *= 0.5) {
      Eigen::VectorXd trial = x + t * dx;
      Eigen::VectorXd Ft;
      if (full_residual(trial, Ft) && Ft.squaredNorm() < f0) {
        x = std::move(trial);
        F = std::move(Ft);
        accepted = true;
        break;
      }
    }
    if (!accepted) throw NumericalError("solve_near line search failed to reduce the residual");
  }

  rep.solution = unpack(x, N);
  rep.residual = F.head(4 * M).lpNorm<Eigen::Infinity>();
  rep.iterations = it;
  const Eigen::VectorXd pinned = E.transpose() * (x - x_ref);
  for (int j = 0; j < 8; ++j) rep.pinned[static_cast<std::size_t>(j)] = pinned(j);
  const TangentReport tan = tangent_analysis(params, rep.solution, N, M);
  rep.tangent_dim = tan.dimension;
  rep.jacobian_gap = tan.gap;
  return rep;
}

struct SweepRow {
  double lambda = 0.0;
  std::optional<int> tangent_dim;
  double gap = std::numeric_limits<double>::quiet_NaN();
  std::optional<int> min_index;
  double residual = std::numeric_limits<double>::quiet_NaN();  // residual of the reference lift
  std::string error;  // empty when every diagnostic succeeded
};

/// Per-lambda tangent dimension, spectral gap and minimal partial index at
/// the reference lift. Failures are recorded in the row and the sweep goes on.
inline std::vector<SweepRow> lambda_sweep(double epsilon, const std::vector<double>& lambdas, int N = 12, int M = 0) {
  if (M == 0) M = default_collocation(N);
  std::vector<SweepRow> rows;
  rows.reserve(lambdas.size());
  for (double lambda : lambdas) {
    SweepRow row;
    row.lambda = lambda;
    const DomainParams params{epsilon, lambda};
    try {
      params.validate();
      const LiftedDisc ref = LiftedDisc::reference();
      row.residual = residual_system(params, ref, M).lpNorm<Eigen::Infinity>();
      const TangentReport tan = tangent_analysis(params, ref, N, M);
      row.gap = tan.gap;
      if (tan.determinate) {
        row.tangent_dim = tan.dimension;
      } else {
        row.error = "tangent dimension indeterminate";
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    try {
      const IndexReport ix = partial_indices(build_symbol_A(lambda));
      if (ix.stable) {
        row.min_index = ix.min_index();
      } else if (row.error.empty()) {
        row.error = "partial indices unstable under truncation doubling";
      }
    } catch (const std::exception& e) {
      if (row.error.empty()) row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

struct GeodesicFamilyReport {
  bool all_stationary = false;
  int rank = 0;
  int samples = 0;
  double max_attachment = 0.0;
};

/// Leminside discs along the four real directions (theta, Re a1, Im a1, a2)
/// around the reference disc at lambda = 1: each must pass the Fourier
/// stationarity test and the four directions must have rank 4.
inline GeodesicFamilyReport geodesic_family_check(const DomainParams& params, int n_samples) {
  params.validate();
  detail::require(params.lambda == 1.0, "the leminside family is stationary for lambda = 1 only");
  detail::require(n_samples >= 1, "n_samples must be positive");
  const double eps = params.epsilon;
  const double step = 0.1 * w_radius_for(eps);

  auto params_at = [&](int dir, double t) {
    LeminsideParams p;
    switch (dir) {
      case 0: p.theta = t >= 0.0 ? t : t + kTwoPi; break;
      case 1: p.a1 = Complex(t, 0.0); break;
      case 2: p.a1 = Complex(0.0, t); break;
      default: p.a2 = t; break;
    }
    return p;
  };

  GeodesicFamilyReport rep;
  const int N = 3, K = 2 * N + 2, M = 8 * (N + K);
  auto check = [&](const LeminsideParams& p) {
    const AnalyticDisc d = disc_leminside(eps, p);
    const StationarityResult r = stationarity_test_fourier(params, d, M, K);
    rep.max_attachment = std::max(rep.max_attachment, r.attachment);
    ++rep.samples;
    if (!r.is_stationary) {
      std::ostringstream msg;
      msg << "leminside disc theta=" << p.theta << " a1=" << p.a1 << " a2=" << p.a2
          << " failed the stationarity test: " << to_string(r.verdict);
      throw NumericalError(msg.str());
    }
  };
  check(LeminsideParams{});
  for (int dir = 0; dir < 4; ++dir) {
    for (int k = 1; k <= n_samples; ++k) {
      for (double sign : {1.0, -1.0}) check(params_at(dir, sign * step * k / n_samples));
    }
  }

  const double h = 1e-6;
  Eigen::MatrixXd jac(4 * (N + 1), 4);
  for (int dir = 0; dir < 4; ++dir) {
    jac.col(dir) = (coefficient_vector(disc_leminside(eps, params_at(dir, h)), N) -
                    coefficient_vector(disc_leminside(eps, params_at(dir, -h)), N)) /
                   (2.0 * h);
  }
  rep.rank = numerical_rank(jac, 1e-8);
  rep.all_stationary = true;
  return rep;
}

inline bool geodesic_family_is_stationary(const DomainParams& params, int n_samples = 4) {
  const GeodesicFamilyReport rep = geodesic_family_check(params, n_samples);
  return rep.all_stationary && rep.rank == 4;
}

}  // namespace holodisc
