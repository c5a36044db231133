// SPDX-License-Identifier: Apache-2.0
#include "bipdo/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bipdo/conventions.hpp"
#include "fft.hpp"

namespace bipdo {

double GridSpec::dxi() const { return conventions::kTwoPi / period; }

int GridSpec::wrap(long k) const {
  const long n = n_points;
  long r = (k - min_mode()) % n;
  if (r < 0) r += n;
  return static_cast<int>(r + min_mode());
}

GridSpec make_grid(int n_points, double period) {
  if (n_points % 2 != 0) throw std::invalid_argument("n_points must be even");
  if (n_points < 4) throw std::invalid_argument("n_points must be at least 4");
  if (!(period > 0.0) || !std::isfinite(period))
    throw std::invalid_argument("period must be positive and finite");
  return GridSpec{n_points, period};
}

namespace {

void check_length(const GridSpec& grid, std::size_t len, const char* what) {
  if (grid.n_points <= 0) throw std::invalid_argument("grid is not initialized");
  if (len != static_cast<std::size_t>(grid.n_points))
    throw std::invalid_argument(std::string(what) + " length " + std::to_string(len) +
                                " does not match n_points " + std::to_string(grid.n_points));
}

}  // namespace

CVec transform(const GridSpec& grid, const CVec& samples) {
  check_length(grid, samples.size(), "samples");
  const int n = grid.n_points;
  CVec natural(n);
  detail::dft(samples.data(), natural.data(), n, -1);
  CVec out(n);
  const double scale = 1.0 / n;
  for (int j = 0; j < n; ++j) {
    const int k = grid.mode_of_index(j);
    out[j] = natural[(k + n) % n] * scale;
  }
  return out;
}

CVec inverse_transform(const GridSpec& grid, const CVec& spectrum) {
  check_length(grid, spectrum.size(), "spectrum");
  const int n = grid.n_points;
  CVec natural(n);
  for (int j = 0; j < n; ++j) natural[(grid.mode_of_index(j) + n) % n] = spectrum[j];
  CVec out(n);
  detail::dft(natural.data(), out.data(), n, +1);
  return out;
}

SampledFunction SampledFunction::from_samples(const GridSpec& grid, CVec samples) {
  SampledFunction f;
  f.spectrum_ = transform(grid, samples);
  f.samples_ = std::move(samples);
  f.grid_ = grid;
  return f;
}

SampledFunction SampledFunction::from_spectrum(const GridSpec& grid, CVec spectrum) {
  SampledFunction f;
  f.samples_ = inverse_transform(grid, spectrum);
  f.spectrum_ = std::move(spectrum);
  f.grid_ = grid;
  return f;
}

cplx SampledFunction::coefficient(int mode) const {
  if (!grid_.on_lattice(mode)) throw std::out_of_range("mode " + std::to_string(mode) + " is off the lattice");
  return spectrum_[grid_.index_of_mode(mode)];
}

SampledFunction from_fourier_coeffs(const GridSpec& grid, const std::map<int, cplx>& coeffs) {
  CVec spectrum(grid.n_points, cplx(0.0));
  for (const auto& [k, c] : coeffs) {
    if (!grid.on_lattice(k))
      throw std::invalid_argument("frequency " + std::to_string(k) + " is outside the lattice [" +
                                  std::to_string(grid.min_mode()) + ", " +
                                  std::to_string(grid.max_mode()) + "]");
    spectrum[grid.index_of_mode(k)] = c;
  }
  return SampledFunction::from_spectrum(grid, std::move(spectrum));
}

cplx lattice_phase(const GridSpec& grid, int n, long k) {
  const long N = grid.n_points;
  long r = (static_cast<long>(n) * k) % N;
  if (r < 0) r += N;
  const double angle = conventions::kTwoPi * static_cast<double>(r) / static_cast<double>(N);
  return {std::cos(angle), std::sin(angle)};
}

CVec phase_table(const GridSpec& grid) {
  const int N = grid.n_points;
  CVec table(static_cast<std::size_t>(N) * N);
  for (int n = 0; n < N; ++n)
    for (int j = 0; j < N; ++j) table[static_cast<std::size_t>(n) * N + j] = lattice_phase(grid, n, grid.mode_of_index(j));
  return table;
}

}  // namespace bipdo
