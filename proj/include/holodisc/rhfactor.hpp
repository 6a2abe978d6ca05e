#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "holodisc/domain.hpp"
#include "holodisc/errors.hpp"
#include "holodisc/fourier.hpp"
#include "holodisc/linalg.hpp"

namespace holodisc {

/// n x n matrix whose entries are Laurent polynomials in zeta, stored as one
/// coefficient matrix per exponent in [min_exponent, max_exponent]. On the
/// unit circle conj(zeta) = zeta^-1, so symbols containing conj(zeta)^k use
/// negative exponents.
class MatrixSymbol {
 public:
  MatrixSymbol(int n, int min_exp, int max_exp)
      : n_(n), min_(min_exp), coeffs_(static_cast<std::size_t>(max_exp - min_exp + 1),
                                      Eigen::MatrixXcd::Zero(n, n)) {
    detail::require(n >= 1 && max_exp >= min_exp, "invalid symbol shape");
  }

  static MatrixSymbol constant(const Eigen::MatrixXcd& m) {
    MatrixSymbol s(static_cast<int>(m.rows()), 0, 0);
    s.coeffs_[0] = m;
    return s;
  }

  int size() const { return n_; }
  int min_exponent() const { return min_; }
  int max_exponent() const { return min_ + static_cast<int>(coeffs_.size()) - 1; }

  Complex& at(int i, int j, int e) {
    detail::require(e >= min_exponent() && e <= max_exponent(), "exponent outside symbol range");
    return coeffs_[static_cast<std::size_t>(e - min_)](i, j);
  }
  Complex coeff(int i, int j, int e) const {
    if (e < min_exponent() || e > max_exponent()) return {};
    return coeffs_[static_cast<std::size_t>(e - min_)](i, j);
  }
  /// Coefficient matrix of zeta^e (zero outside the stored range).
  Eigen::MatrixXcd coefficient(int e) const {
    if (e < min_exponent() || e > max_exponent()) return Eigen::MatrixXcd::Zero(n_, n_);
    return coeffs_[static_cast<std::size_t>(e - min_)];
  }

  /// Entry (i, j) as exponent -> coefficient, zero coefficients omitted.
  std::map<int, Complex> entry(int i, int j) const {
    std::map<int, Complex> out;
    for (int e = min_exponent(); e <= max_exponent(); ++e) {
      const Complex c = coeff(i, j, e);
      if (c != Complex{}) out[e] = c;
    }
    return out;
  }

  Eigen::MatrixXcd eval(Complex zeta) const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n_, n_);
    for (int e = min_exponent(); e <= max_exponent(); ++e) out += coefficient(e) * std::pow(zeta, e);
    return out;
  }

  /// Largest |exponent| that carries a nonzero coefficient.
  int degree_bound() const {
    int d = 0;
    for (int e = min_exponent(); e <= max_exponent(); ++e) {
      if (!coefficient(e).isZero(0.0)) d = std::max(d, std::abs(e));
    }
    return d;
  }

  MatrixSymbol trimmed() const {
    int lo = min_exponent(), hi = max_exponent();
    while (lo < hi && coefficient(lo).isZero(0.0)) ++lo;
    while (hi > lo && coefficient(hi).isZero(0.0)) --hi;
    MatrixSymbol out(n_, lo, hi);
    for (int e = lo; e <= hi; ++e) out.coeffs_[static_cast<std::size_t>(e - lo)] = coefficient(e);
    return out;
  }

  MatrixSymbol transpose() const {
    MatrixSymbol out(n_, min_exponent(), max_exponent());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out.coeffs_[k] = coeffs_[k].transpose();
    return out;
  }

  /// zeta -> conj(A(zeta)) restricted to the unit circle.
  MatrixSymbol conj_on_circle() const {
    MatrixSymbol out(n_, -max_exponent(), -min_exponent());
    for (int e = min_exponent(); e <= max_exponent(); ++e) out.at_matrix(-e) = coefficient(e).conjugate();
    return out;
  }

  MatrixSymbol operator-() const {
    MatrixSymbol out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  friend MatrixSymbol operator*(const MatrixSymbol& a, const MatrixSymbol& b) {
    detail::require(a.n_ == b.n_, "symbol size mismatch");
    MatrixSymbol out(a.n_, a.min_exponent() + b.min_exponent(), a.max_exponent() + b.max_exponent());
    for (int ea = a.min_exponent(); ea <= a.max_exponent(); ++ea) {
      for (int eb = b.min_exponent(); eb <= b.max_exponent(); ++eb) {
        out.at_matrix(ea + eb) += a.coefficient(ea) * b.coefficient(eb);
      }
    }
    return out.trimmed();
  }

 private:
  Eigen::MatrixXcd& at_matrix(int e) { return coeffs_[static_cast<std::size_t>(e - min_)]; }

  int n_;
  int min_;
  std::vector<Eigen::MatrixXcd> coeffs_;
};

/// Linearisation matrix of the conormal defining functions along the lift
/// (zeta, 0, 1, 0): rows rho_1..rho_4, columns d/d conj of (z, w, zt, wt).
inline MatrixSymbol build_G(double lambda) {
  MatrixSymbol g(4, 0, 3);
  g.at(0, 0, 1) = 1.0;
  g.at(1, 0, 1) = -kI;
  g.at(1, 2, 0) = -kI;
  g.at(2, 1, 1) = -1.0;
  g.at(2, 1, 3) = lambda;
  g.at(2, 3, 0) = 1.0;
  g.at(3, 1, 1) = -kI;
  g.at(3, 1, 3) = -kI * lambda;
  g.at(3, 3, 0) = -kI;
  return g;
}

/// G with rows and columns permuted into 2x2 block-diagonal form
/// (rows rho_2, rho_1, rho_3, rho_4; columns zt, z, w, wt).
inline MatrixSymbol build_G1(double lambda) {
  MatrixSymbol g(4, 0, 3);
  g.at(0, 0, 0) = -kI;
  g.at(0, 1, 1) = -kI;
  g.at(1, 1, 1) = 1.0;
  g.at(2, 2, 1) = -1.0;
  g.at(2, 2, 3) = lambda;
  g.at(2, 3, 0) = 1.0;
  g.at(3, 2, 1) = -kI;
  g.at(3, 2, 3) = -kI * lambda;
  g.at(3, 3, 0) = -kI;
  return g;
}

/// Closed-form inverse of G1 on the unit circle.
inline MatrixSymbol build_G1_inverse(double lambda) {
  MatrixSymbol g(4, -1, 2);
  g.at(0, 0, 0) = kI;
  g.at(0, 1, 0) = -1.0;
  g.at(1, 1, -1) = 1.0;
  g.at(2, 2, -1) = -0.5;
  g.at(2, 3, -1) = 0.5 * kI;
  g.at(3, 2, 0) = 0.5;
  g.at(3, 2, 2) = 0.5 * lambda;
  g.at(3, 3, 0) = 0.5 * kI;
  g.at(3, 3, 2) = -0.5 * kI * lambda;
  return g;
}

/// Closed form of the Riemann-Hilbert symbol -conj(G1^-1) G1:
/// [[1, 2z, 0, 0], [0, -z^2, 0, 0], [0, 0, lambda z^4, z], [0, 0, z (1 - lambda^2), -lambda conj(z)^2]].
inline MatrixSymbol build_symbol_A(double lambda) {
  MatrixSymbol a(4, -2, 4);
  a.at(0, 0, 0) = 1.0;
  a.at(0, 1, 1) = 2.0;
  a.at(1, 1, 2) = -1.0;
  a.at(2, 2, 4) = lambda;
  a.at(2, 3, 1) = 1.0;
  a.at(3, 2, 1) = 1.0 - lambda * lambda;
  a.at(3, 3, -2) = -lambda;
  return a;
}

/// The same symbol assembled by Laurent multiplication -conj(G1^-1) * G1
/// from the closed-form inverse.
inline MatrixSymbol symbol_A_from_G1(double lambda) {
  return -(build_G1_inverse(lambda).conj_on_circle() * build_G1(lambda));
}

/// Winding number of det A(zeta) around the unit circle, accumulated from
/// argument increments on a 2^10-point grid.
inline int maslov_index(const MatrixSymbol& symbol, int grid = 1024) {
  detail::require(grid >= 8, "winding grid too small");
  const auto zetas = roots_of_unity(grid);
  std::vector<Complex> dets;
  dets.reserve(zetas.size());
  double scale = 0.0;
  for (const Complex& z : zetas) {
    dets.push_back(symbol.eval(z).determinant());
    scale = std::max(scale, std::abs(dets.back()));
  }
  double total = 0.0;
  for (std::size_t j = 0; j < dets.size(); ++j) {
    const Complex d0 = dets[j];
    const Complex d1 = dets[(j + 1) % dets.size()];
    if (std::abs(d0) <= 1e-12 * std::max(scale, 1.0)) {
      throw NumericalError("maslov_index: determinant vanishes on the unit circle");
    }
    total += std::arg(d1 / d0);
  }
  const double w = total / kTwoPi;
  const double r = std::round(w);
  if (std::abs(w - r) >= 0.01) throw NumericalError("maslov_index: winding number not resolved on the grid");
  return static_cast<int>(r);
}

/// Order of the factors in A = (holomorphic inside) Lambda (holomorphic outside).
/// plus_left is the order of  -Theta conj(G1^-1) G1 = Lambda conj(Theta), which
/// governs the solutions of f = A conj(f); minus_left is the transposed order.
enum class FactorOrder { plus_left, minus_left };

inline constexpr int kShiftMin = -6;
inline constexpr int kShiftMax = 6;

struct IndexReport {
  std::vector<int> partial_indices;  // descending
  int maslov = 0;
  int truncation = 0;
  double rank_tolerance = 1e-8;
  bool stable = false;
  std::vector<int> kernel_profile;  // dim ker at shifts kShiftMin..kShiftMax
  std::vector<int> doubled_profile;  // same at twice the truncation

  int min_index() const { return partial_indices.empty() ? 0 : partial_indices.back(); }
};

/// Toeplitz section of zeta^shift * B with T block columns (input degrees
/// 0..T-1) and every block row the image reaches, so that its kernel is the
/// exact kernel of the Toeplitz operator restricted to degree < T.
inline Eigen::MatrixXcd toeplitz_section(const MatrixSymbol& b, int shift, int T) {
  const int n = b.size();
  const int rows_blocks = std::max(0, T + shift + b.max_exponent());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n) * rows_blocks,
                                              static_cast<Eigen::Index>(n) * T);
  for (int j = 0; j < T; ++j) {
    for (int e = std::max(0, j + shift + b.min_exponent()); e < rows_blocks; ++e) {
      const int ex = e - j - shift;
      if (ex > b.max_exponent()) break;
      m.block(static_cast<Eigen::Index>(n) * e, static_cast<Eigen::Index>(n) * j, n, n) = b.coefficient(ex);
    }
  }
  return m;
}

/// dim ker of the shifted Toeplitz operators, shifts kShiftMin..kShiftMax.
/// For A = A+ Lambda A- this equals sum_i max(-kappa_i - shift, 0).
inline std::vector<int> kernel_profile(const MatrixSymbol& symbol, int T, double rank_tol,
                                       FactorOrder order = FactorOrder::plus_left) {
  const MatrixSymbol b = order == FactorOrder::plus_left ? symbol.transpose() : symbol;
  std::vector<int> out;
  for (int k = kShiftMin; k <= kShiftMax; ++k) {
    const Eigen::MatrixXcd sec = toeplitz_section(b, k, T);
    if (sec.rows() == 0) {
      out.push_back(static_cast<int>(sec.cols()));
      continue;
    }
    out.push_back(kernel_dimension(band_singular_values(sec), sec.cols(), rank_tol));
  }
  return out;
}

/// Index multiset from a kernel profile: D(k-1) - D(k) counts indices <= -k.
inline std::vector<int> indices_from_profile(const std::vector<int>& profile, int n) {
  const int len = static_cast<int>(profile.size());
  detail::require(len == kShiftMax - kShiftMin + 1, "kernel profile has the wrong length");
  auto D = [&](int k) { return profile[static_cast<std::size_t>(k - kShiftMin)]; };
  std::vector<int> at_most;  // at_most[k - (kShiftMin+1)] = #{kappa <= -k}
  for (int k = kShiftMin + 1; k <= kShiftMax; ++k) {
    const int c = D(k - 1) - D(k);
    if (c < 0) throw NumericalError("rank tolerance failure: kernel profile is not nonincreasing");
    if (!at_most.empty() && c > at_most.back()) {
      throw NumericalError("rank tolerance failure: kernel profile is not convex");
    }
    at_most.push_back(c);
  }
  if (D(kShiftMax) != 0 || at_most.back() != 0) {
    throw NumericalError("partial indices below the resolvable shift range");
  }
  if (at_most.front() != n) throw NumericalError("partial indices above the resolvable shift range");
  std::vector<int> out;
  for (std::size_t i = 0; i + 1 < at_most.size(); ++i) {
    const int k = kShiftMin + 1 + static_cast<int>(i);
    for (int r = 0; r < at_most[i] - at_most[i + 1]; ++r) out.push_back(-k);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// Partial indices from shifted block-Toeplitz kernel dimensions, checked by
/// one doubling of the truncation and against the Maslov index.
inline IndexReport partial_indices(const MatrixSymbol& symbol, int T = 128, double rank_tol = 1e-8,
                                   FactorOrder order = FactorOrder::plus_left) {
  detail::require(T >= 16 * (1 + symbol.degree_bound()), "truncation must be >= 16 (1 + exponent range)");
  detail::require(rank_tol > 0.0 && rank_tol < 1.0, "rank tolerance must lie in (0, 1)");
  IndexReport rep;
  rep.maslov = maslov_index(symbol);
  rep.truncation = T;
  rep.rank_tolerance = rank_tol;
  rep.kernel_profile = kernel_profile(symbol, T, rank_tol, order);
  rep.doubled_profile = kernel_profile(symbol, 2 * T, rank_tol, order);
  rep.stable = rep.kernel_profile == rep.doubled_profile;
  rep.partial_indices = indices_from_profile(rep.kernel_profile, symbol.size());
  const int sum = std::accumulate(rep.partial_indices.begin(), rep.partial_indices.end(), 0);
  if (rep.stable && sum != rep.maslov) {
    throw NumericalError("partial indices sum " + std::to_string(sum) + " differs from Maslov index " +
                         std::to_string(rep.maslov));
  }
  return rep;
}

/// All partial indices >= -1: the nearby nonlinear problem then has a
/// manifold of solutions of dimension (Maslov index + n).
inline bool globevnik_criterion(const IndexReport& report) {
  detail::require(report.stable, "globevnik_criterion needs a stable index report");
  return std::all_of(report.partial_indices.begin(), report.partial_indices.end(), [](int k) { return k >= -1; });
}

/// Real dimension predicted by the indices: sum over kappa >= 0 of (kappa + 1).
inline int dimension_from_indices(const std::vector<int>& indices) {
  int d = 0;
  for (int k : indices) d += k >= 0 ? k + 1 : 0;
  return d;
}

namespace detail {

/// Real matrix of f -> Re(conj(G) f) on the unit circle, f a C^n-valued
/// polynomial of degree < T, written on Fourier coefficients. Rows are the
/// real and imaginary parts of the coefficients m >= 0 of the real function.
inline Eigen::MatrixXd boundary_operator(const MatrixSymbol& g, int T) {
  const int n = g.size();
  const int gmin = g.min_exponent(), gmax = g.max_exponent();
  const int mmax = std::max(T - 1 - gmin, gmax);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * n * (mmax + 1), 2 * n * T);
  for (int m = 0; m <= mmax; ++m) {
    for (int r = 0; r < n; ++r) {
      const Eigen::Index row = 2 * (static_cast<Eigen::Index>(m) * n + r);
      for (int j = 0; j < T; ++j) {
        for (int c = 0; c < n; ++c) {
          const Eigen::Index col = 2 * (static_cast<Eigen::Index>(j) * n + c);
          // coefficient m of conj(G) f, and conj of coefficient -m
          const Complex p = std::conj(g.coeff(r, c, j - m));
          const Complex q = g.coeff(r, c, j + m);
          a(row, col) += p.real() + q.real();
          a(row, col + 1) += -p.imag() + q.imag();
          a(row + 1, col) += p.imag() + q.imag();
          a(row + 1, col + 1) += p.real() - q.real();
        }
      }
    }
  }
  return a;
}

}  // namespace detail

/// Real dimension of {f holomorphic, continuous to the circle : Re(conj(G) f) = 0},
/// from the numerical kernel of the truncated boundary operator; the value
/// must persist when the truncation doubles.
inline int linear_solution_dimension(const MatrixSymbol& g, int T = 128, double rank_tol = 1e-8) {
  detail::require(T >= 16 * (1 + g.degree_bound()), "truncation must be >= 16 (1 + exponent range)");
  auto dim_at = [&](int t) {
    const Eigen::MatrixXd a = detail::boundary_operator(g, t);
    return kernel_dimension(band_singular_values(a), a.cols(), rank_tol);
  };
  const int d = dim_at(T);
  const int d2 = dim_at(2 * T);
  if (d != d2) {
    throw NumericalError("linear_solution_dimension unstable under truncation doubling: " + std::to_string(d) +
                         " vs " + std::to_string(d2));
  }
  return d;
}

}  // namespace holodisc
