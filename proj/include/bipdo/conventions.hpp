// SPDX-License-Identifier: Apache-2.0
//
// Discretization conventions shared by every module.
//
// Grid:      x_n  = n * period / N,            n = 0 .. N-1
// Lattice:   xi_k = k * 2*pi / period,         k = -N/2 .. N/2-1
//            Spectra are stored in centered order: index j <-> mode k = j - N/2.
//
// DFT:       spectrum_k = (1/N) * sum_n f(x_n) exp(-i xi_k x_n)
//            f(x_n)     = sum_k spectrum_k exp(+i xi_k x_n)
//
//            With this choice a pure mode exp(i xi_k x) has spectrum exactly 1 at k,
//            and the discrete quantization
//               T(f,g)(x_n) = sum_{k,l} sigma(x_n, xi_k, xi_l) f^_k g^_l exp(i x_n (xi_k + xi_l))
//            reduces to the pointwise product f*g for sigma == 1.
//
// Parseval:  sum_n |f(x_n)|^2 dx = period * sum_k |spectrum_k|^2
//
// Pairings:  <u, v>   = sum_n u(x_n) v(x_n) dx          (bilinear; used for bilinear transposes)
//            (u, v)   = sum_n u(x_n) conj(v(x_n)) dx    (sesquilinear; used for linear adjoints)
//
// STFT:      V(x_n, xi_k) = sum_j exp(-i t_j xi_k) f(t_j) phi(t_j - x_n) dx, circular shifts;
//            the outer (frequency) norm uses the Plancherel measure dxi / (2*pi).
#pragma once

#include <numbers>

namespace bipdo::conventions {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Constant c in  sum_n |f_n|^2 dx = c * sum_k |f^_k|^2.
inline constexpr double parseval_constant(double period) { return period; }

/// Measure attached to one frequency sample in modulation norms.
inline constexpr double stft_frequency_weight(double period) {
  return (kTwoPi / period) / kTwoPi;
}

}  // namespace bipdo::conventions
