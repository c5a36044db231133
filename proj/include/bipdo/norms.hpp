// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <vector>

#include "bipdo/lattice.hpp"

namespace bipdo {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (sum |f(x_n)|^p dx)^{1/p}; p = infinity gives the max. Quasi-norms 0 < p < 1 are allowed.
double lebesgue_norm(const SampledFunction& f, double p);
double lebesgue_norm(const GridSpec& grid, const CVec& samples, double p);

/// ||J_s f||_{L^p}.
double sobolev_norm(const SampledFunction& f, double s, double p);

/// V(x_n, xi_k) stored as values[k * N + n]; k is a centered frequency index.
struct StftGrid {
  GridSpec grid;
  CVec values;
  cplx at(int n, int k) const { return values[static_cast<std::size_t>(k) * grid.n_points + n]; }
};

/// Centered Gaussian window exp(-((x - period/2)/width)^2 / 2) sampled on the grid.
SampledFunction gaussian_window(const GridSpec& grid, double width);

StftGrid stft(const SampledFunction& f, const SampledFunction& window);

/// Mixed norm of the STFT: L^p in x (measure dx) inside, L^t in xi (measure dxi / 2pi) outside.
double modulation_norm(const SampledFunction& f, const SampledFunction& window, double p, double t);

/// (1 + |u - v|)^s <= (1 + |u|)^{|s|} (1 + |v|)^s, with a relative slack for rounding.
bool peetre_holds(double s, double u, double v);

}  // namespace bipdo
