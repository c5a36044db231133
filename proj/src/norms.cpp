// SPDX-License-Identifier: Apache-2.0
#include "bipdo/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bipdo/conventions.hpp"
#include "bipdo/parallel.hpp"
#include "bipdo/quantize.hpp"
#include "bipdo/tolerances.hpp"
#include "fft.hpp"

namespace bipdo {

namespace {

void check_exponent(double p) {
  if (!(p > 0.0)) throw std::invalid_argument("exponent must be positive");
}

// (sum |v|^p * weight)^{1/p}, or max |v| for p = inf.
double mixed(const std::vector<double>& magnitudes, double p, double weight) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : magnitudes) m = std::max(m, v);
    return m;
  }
  double scale = 0.0;
  for (double v : magnitudes) scale = std::max(scale, v);
  if (scale == 0.0) return 0.0;
  // Factor out the largest magnitude so that large p does not overflow.
  double acc = 0.0;
  for (double v : magnitudes) acc += std::pow(v / scale, p);
  return scale * std::pow(acc * weight, 1.0 / p);
}

}  // namespace

double lebesgue_norm(const GridSpec& grid, const CVec& samples, double p) {
  check_exponent(p);
  std::vector<double> mags(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) mags[i] = std::abs(samples[i]);
  return mixed(mags, p, grid.dx());
}

double lebesgue_norm(const SampledFunction& f, double p) { return lebesgue_norm(f.grid(), f.samples(), p); }

double sobolev_norm(const SampledFunction& f, double s, double p) {
  check_exponent(p);
  return lebesgue_norm(apply_Jm(s, f), p);
}

SampledFunction gaussian_window(const GridSpec& grid, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("window width must be positive");
  CVec w(grid.n_points);
  for (int n = 0; n < grid.n_points; ++n) {
    const double u = (grid.x(n) - grid.period / 2) / width;
    w[n] = std::exp(-0.5 * u * u);
  }
  return SampledFunction::from_samples(grid, std::move(w));
}

StftGrid stft(const SampledFunction& f, const SampledFunction& window) {
  if (!(f.grid() == window.grid())) throw std::invalid_argument("function and window live on different grids");
  const GridSpec& grid = f.grid();
  const int N = grid.n_points;
  bool nonzero = false;
  for (const auto& v : window.samples()) nonzero = nonzero || v != cplx(0.0);
  if (!nonzero) throw std::invalid_argument("window must be non-zero");

  StftGrid out{grid, CVec(static_cast<std::size_t>(N) * N)};
  const CVec& fs = f.samples();
  const CVec& ws = window.samples();
  // V(x_n, xi_k) = dx * sum_j exp(-i t_j xi_k) f(t_j) phi(t_j - x_n) = dx * N * DFT_k[f phi(. - x_n)].
  parallel_for(0, N, [&](std::size_t n) {
    CVec prod(N), natural(N);
    for (int j = 0; j < N; ++j) prod[j] = fs[j] * ws[((j - static_cast<int>(n)) % N + N) % N];
    detail::dft(prod.data(), natural.data(), N, -1);
    for (int k = 0; k < N; ++k)
      out.values[static_cast<std::size_t>(k) * N + n] = natural[(grid.mode_of_index(k) + N) % N] * grid.dx();
  });
  return out;
}

double modulation_norm(const SampledFunction& f, const SampledFunction& window, double p, double t) {
  check_exponent(p);
  check_exponent(t);
  const StftGrid V = stft(f, window);
  const int N = f.grid().n_points;
  std::vector<double> inner(N);
  std::vector<double> mags(N);
  for (int k = 0; k < N; ++k) {
    for (int n = 0; n < N; ++n) mags[n] = std::abs(V.at(n, k));
    inner[k] = mixed(mags, p, f.grid().dx());
  }
  return mixed(inner, t, conventions::stft_frequency_weight(f.grid().period));
}

bool peetre_holds(double s, double u, double v) {
  const double lhs = std::pow(1.0 + std::fabs(u - v), s);
  const double rhs = std::pow(1.0 + std::fabs(u), std::fabs(s)) * std::pow(1.0 + std::fabs(v), s);
  return lhs <= rhs * (1.0 + tolerances::kPeetreRelative);
}

}  // namespace bipdo
