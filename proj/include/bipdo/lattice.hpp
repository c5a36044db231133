// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <map>
#include <vector>

namespace bipdo {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

/// Uniform periodic grid on [0, period) with an even number of points.
/// Spectral quantities use the centered lattice k = -N/2 .. N/2-1, see conventions.hpp.
struct GridSpec {
  int n_points = 0;
  double period = 0.0;

  double dx() const { return period / n_points; }
  double x(int n) const { return n * dx(); }
  /// Spacing of the physical frequency lattice, 2*pi/period.
  double dxi() const;
  int min_mode() const { return -n_points / 2; }
  int max_mode() const { return n_points / 2 - 1; }
  bool on_lattice(long k) const { return k >= min_mode() && k <= max_mode(); }
  int mode_of_index(int j) const { return j - n_points / 2; }
  int index_of_mode(int k) const { return k + n_points / 2; }
  /// Reduces an integer mode into the lattice modulo n_points.
  int wrap(long k) const;
  double xi(int k) const { return k * dxi(); }
  double xi_at_index(int j) const { return xi(mode_of_index(j)); }

  bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(int n_points, double period);

/// Samples of a periodic function together with their spectrum.
class SampledFunction {
 public:
  SampledFunction() = default;
  static SampledFunction from_samples(const GridSpec& grid, CVec samples);
  static SampledFunction from_spectrum(const GridSpec& grid, CVec spectrum);

  const GridSpec& grid() const { return grid_; }
  const CVec& samples() const { return samples_; }
  /// Centered order: index j holds mode j - N/2.
  const CVec& spectrum() const { return spectrum_; }
  cplx coefficient(int mode) const;

 private:
  GridSpec grid_;
  CVec samples_;
  CVec spectrum_;
};

SampledFunction from_fourier_coeffs(const GridSpec& grid, const std::map<int, cplx>& coeffs);

CVec transform(const GridSpec& grid, const CVec& samples);
CVec inverse_transform(const GridSpec& grid, const CVec& spectrum);

/// exp(i xi_k x_n) for the mode k, computed from the exact residue (k*n mod N).
cplx lattice_phase(const GridSpec& grid, int n, long k);

/// Row-major table E[n*N + j] = exp(i xi_{k_j} x_n).
CVec phase_table(const GridSpec& grid);

}  // namespace bipdo
