#pragma once

#include <complex>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "holodisc/domain.hpp"

namespace holodisc {

/// The M-th roots of unity exp(2 pi i j / M), j = 0..M-1.
inline std::vector<Complex> roots_of_unity(int M) {
  std::vector<Complex> out(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) out[static_cast<std::size_t>(j)] = std::polar(1.0, kTwoPi * j / M);
  return out;
}

/// Discrete Fourier coefficients c_k = (1/M) sum_j f(zeta_j) zeta_j^{-k} of
/// samples at the M-th roots of unity. Index k >= 0 sits at position k,
/// index -k at position M - k.
inline std::vector<Complex> fourier_coefficients(const std::vector<Complex>& samples) {
  Eigen::FFT<double> fft;
  std::vector<Complex> out;
  fft.fwd(out, samples);
  const double scale = 1.0 / static_cast<double>(samples.size());
  for (auto& c : out) c *= scale;
  return out;
}

/// Coefficient of zeta^k, k possibly negative, from a fourier_coefficients() result.
inline Complex coefficient_at(const std::vector<Complex>& coeffs, int k) {
  const int M = static_cast<int>(coeffs.size());
  return coeffs[static_cast<std::size_t>(((k % M) + M) % M)];
}

}  // namespace holodisc
