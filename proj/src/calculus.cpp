// SPDX-License-Identifier: Apache-2.0
#include "bipdo/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bipdo/parallel.hpp"
#include "fft.hpp"

namespace bipdo {

// --- angles ----------------------------------------------------------------

double adjoint_angle(double theta, int which) {
  if (!(std::fabs(theta) < std::numbers::pi / 2)) throw std::invalid_argument("theta must lie in (-pi/2, pi/2)");
  const double t = line_slope(theta);
  if (which == 1) {
    constexpr double eps = 1e-12;
    if (std::fabs(theta) < eps || std::fabs(theta + std::numbers::pi / 4) < eps)
      throw std::invalid_argument("degenerate angle: theta*1 is undefined for theta in {0, -pi/4}");
    // cot(theta*) = -1 - cot(theta)  <=>  tan(theta*) = -t / (1 + t).
    return std::atan(-t / (1.0 + t));
  }
  if (which == 2) return std::atan(-1.0 - t);
  throw std::invalid_argument("which must be 1 or 2");
}

ClassSpec duality_class_map(const ClassSpec& spec, int which) {
  if (which != 1 && which != 2) throw std::invalid_argument("which must be 1 or 2");
  ClassSpec out = spec;
  out.theta = adjoint_angle(spec.theta, which);
  switch (spec.variant) {
    case ClassVariant::Plain: out.variant = which == 1 ? ClassVariant::Star1 : ClassVariant::Star2; break;
    case ClassVariant::Star1: out.variant = which == 1 ? ClassVariant::Plain : ClassVariant::Star1; break;
    case ClassVariant::Star2: out.variant = which == 1 ? ClassVariant::Star2 : ClassVariant::Plain; break;
    default: throw std::invalid_argument("the duality table covers the plain, star1 and star2 classes only");
  }
  return out;
}

// --- helpers ---------------------------------------------------------------

namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw std::invalid_argument("operands live on different grids");
}

int signed_mode(int mi, int N) { return mi <= N / 2 ? mi : mi - N; }

// S[(mi * N + j) * N + l] = (1/N) sum_n sigma(n, j, l) exp(-2 pi i mi n / N), natural mi.
CVec x_spectrum(const SymbolGrid& s) {
  const int N = s.grid.n_points;
  const std::size_t NN = static_cast<std::size_t>(N) * N;
  CVec out(static_cast<std::size_t>(N) * NN, cplx(0.0));
  if (s.x_independent()) {
    std::copy(s.tensor.begin(), s.tensor.begin() + NN, out.begin());
    return out;
  }
  parallel_for(0, NN, [&](std::size_t jl) {
    CVec col(N), spec(N);
    for (int n = 0; n < N; ++n) col[n] = s.tensor[n * NN + jl];
    detail::dft(col.data(), spec.data(), N, -1);
    for (int mi = 0; mi < N; ++mi) out[mi * NN + jl] = spec[mi] / static_cast<double>(N);
  });
  return out;
}

SymbolGrid from_x_spectrum(const GridSpec& grid, const CVec& S) {
  const int N = grid.n_points;
  const std::size_t NN = static_cast<std::size_t>(N) * N;
  SymbolGrid out = make_symbol_grid(grid, N);
  parallel_for(0, NN, [&](std::size_t jl) {
    CVec spec(N), col(N);
    for (int mi = 0; mi < N; ++mi) spec[mi] = S[mi * NN + jl];
    detail::dft(spec.data(), col.data(), N, +1);
    for (int n = 0; n < N; ++n) out.tensor[n * NN + jl] = col[n];
  });
  return out;
}

// t[mi * N + j] = (1/N) sum_n tau(n, j) exp(-2 pi i mi n / N).
CVec x_spectrum(const LinearSymbolGrid& t) {
  const int N = t.grid.n_points;
  CVec out(static_cast<std::size_t>(N) * N, cplx(0.0));
  if (t.x_independent()) {
    std::copy(t.tensor.begin(), t.tensor.end(), out.begin());
    return out;
  }
  CVec col(N), spec(N);
  for (int j = 0; j < N; ++j) {
    for (int n = 0; n < N; ++n) col[n] = t.tensor[static_cast<std::size_t>(n) * N + j];
    detail::dft(col.data(), spec.data(), N, -1);
    for (int mi = 0; mi < N; ++mi) out[static_cast<std::size_t>(mi) * N + j] = spec[mi] / static_cast<double>(N);
  }
  return out;
}

std::vector<int> active_modes(const CVec& spectrum, int N) {
  const std::size_t per = spectrum.size() / N;
  std::vector<int> modes;
  for (int mi = 0; mi < N; ++mi) {
    bool any = false;
    for (std::size_t q = 0; q < per && !any; ++q) any = spectrum[mi * per + q] != cplx(0.0);
    if (any) modes.push_back(mi);
  }
  return modes;
}

// Spectral matrix M[p * N + k]: (tau(x, D) e_k)^_p.
CVec linear_matrix(const LinearSymbolGrid& t) {
  const int N = t.grid.n_points;
  const CVec ts = x_spectrum(t);
  CVec M(static_cast<std::size_t>(N) * N, cplx(0.0));
  for (int p = 0; p < N; ++p)
    for (int k = 0; k < N; ++k) {
      const int mi = ((p - k) % N + N) % N;
      M[static_cast<std::size_t>(p) * N + k] = ts[static_cast<std::size_t>(mi) * N + k];
    }
  return M;
}

// tau(x_n, xi_p) = exp(-i xi_p x_n) sum_q M[q, p] exp(i xi_q x_n).
LinearSymbolGrid symbol_from_matrix(const GridSpec& grid, const CVec& M) {
  const int N = grid.n_points;
  const CVec E = phase_table(grid);
  LinearSymbolGrid out = make_linear_symbol_grid(grid, N);
  for (int n = 0; n < N; ++n) {
    const cplx* e = &E[static_cast<std::size_t>(n) * N];
    for (int p = 0; p < N; ++p) {
      cplx acc = 0.0;
      for (int q = 0; q < N; ++q) acc += M[static_cast<std::size_t>(q) * N + p] * e[q];
      out.at(n, p) = acc * std::conj(e[p]);
    }
  }
  return out;
}

}  // namespace

// --- exact symbols ---------------------------------------------------------

SymbolGrid adjoint_exact(const SymbolGrid& sigma, int which) {
  if (which != 1 && which != 2) throw std::invalid_argument("which must be 1 or 2");
  const GridSpec& grid = sigma.grid;
  const int N = grid.n_points;
  const std::size_t NN = static_cast<std::size_t>(N) * N;
  // Reflect the first (which = 1) or second (which = 2) frequency: slot <- wrap(-m - k - l).
  auto reflect = [&](const CVec& S, CVec& R, int mi) {
    for (int j = 0; j < N; ++j)
      for (int l = 0; l < N; ++l) {
        const int r = grid.index_of_mode(grid.wrap(-static_cast<long>(mi) - grid.mode_of_index(j) - grid.mode_of_index(l)));
        const std::size_t src = which == 1 ? static_cast<std::size_t>(r) * N + l : static_cast<std::size_t>(j) * N + r;
        R[mi * NN + static_cast<std::size_t>(j) * N + l] = S[mi * NN + src];
      }
  };
  if (sigma.x_independent()) {
    SymbolGrid out = make_symbol_grid(grid, 1);
    reflect(sigma.tensor, out.tensor, 0);
    return out;
  }
  const CVec S = x_spectrum(sigma);
  CVec R(S.size());
  parallel_for(0, N, [&](std::size_t mi) { reflect(S, R, static_cast<int>(mi)); });
  return from_x_spectrum(grid, R);
}

SymbolGrid compose_right_exact(const SymbolGrid& sigma, const LinearSymbolGrid& tau1, const LinearSymbolGrid& tau2) {
  require_same_grid(sigma.grid, tau1.grid);
  require_same_grid(sigma.grid, tau2.grid);
  const GridSpec& grid = sigma.grid;
  const int N = grid.n_points;
  const CVec T1 = x_spectrum(tau1);
  const CVec T2 = x_spectrum(tau2);
  const std::vector<int> modes1 = active_modes(T1, N);
  const std::vector<int> modes2 = active_modes(T2, N);
  const CVec E = phase_table(grid);
  const bool x_free = sigma.x_independent() && tau1.x_independent() && tau2.x_independent();
  SymbolGrid out = make_symbol_grid(grid, x_free ? 1 : N);

  // m(n,k,l) = conj(E[n][k] E[n][l]) sum_{a,b} sigma(n,a,b) T1_{a-k}[k] E[n][a] T2_{b-l}[l] E[n][b]
  parallel_for(0, static_cast<std::size_t>(out.x_extent), [&](std::size_t n) {
    const cplx* e = &E[n * N];
    CVec A(static_cast<std::size_t>(N) * N, cplx(0.0));  // A[k * N + b]
    for (int k = 0; k < N; ++k)
      for (int mi : modes1) {
        const int a = (k + mi) % N;  // index shift equals mode shift modulo N
        const cplx c = T1[static_cast<std::size_t>(mi) * N + k] * e[a];
        if (c == cplx(0.0)) continue;
        for (int b = 0; b < N; ++b) A[static_cast<std::size_t>(k) * N + b] += sigma.at(static_cast<int>(n), a, b) * c;
      }
    for (int k = 0; k < N; ++k)
      for (int l = 0; l < N; ++l) {
        cplx acc = 0.0;
        for (int mi : modes2) {
          const int b = (l + mi) % N;
          acc += A[static_cast<std::size_t>(k) * N + b] * T2[static_cast<std::size_t>(mi) * N + l] * e[b];
        }
        out.at(static_cast<int>(n), k, l) = acc * std::conj(e[k] * e[l]);
      }
  });
  return out;
}

SymbolGrid compose_left_exact(const LinearSymbolGrid& tau, const SymbolGrid& sigma) {
  require_same_grid(sigma.grid, tau.grid);
  const GridSpec& grid = sigma.grid;
  const int N = grid.n_points;
  const std::size_t NN = static_cast<std::size_t>(N) * N;
  const CVec S = x_spectrum(sigma);
  const std::vector<int> modes = active_modes(S, N);
  const CVec E = phase_table(grid);
  const bool x_free = sigma.x_independent() && tau.x_independent();
  SymbolGrid out = make_symbol_grid(grid, x_free ? 1 : N);

  // m(n,k,l) = sum_m S_m[k,l] tau(n, p) E[n][p] conj(E[n][k] E[n][l]),  p = k + l + m.
  parallel_for(0, static_cast<std::size_t>(out.x_extent), [&](std::size_t n) {
    const cplx* e = &E[n * N];
    for (int j = 0; j < N; ++j)
      for (int l = 0; l < N; ++l) {
        const long base = static_cast<long>(grid.mode_of_index(j)) + grid.mode_of_index(l);
        cplx acc = 0.0;
        for (int mi : modes) {
          const int p = grid.index_of_mode(grid.wrap(base + mi));
          acc += S[mi * NN + static_cast<std::size_t>(j) * N + l] * tau.at(static_cast<int>(n), p) * e[p];
        }
        out.at(static_cast<int>(n), j, l) = acc * std::conj(e[j] * e[l]);
      }
  });
  return out;
}

LinearSymbolGrid linear_adjoint_exact(const LinearSymbolGrid& tau) {
  const int N = tau.grid.n_points;
  const CVec M = linear_matrix(tau);
  CVec H(M.size());
  for (int p = 0; p < N; ++p)
    for (int k = 0; k < N; ++k)
      H[static_cast<std::size_t>(k) * N + p] = std::conj(M[static_cast<std::size_t>(p) * N + k]);
  return symbol_from_matrix(tau.grid, H);
}

LinearSymbolGrid linear_compose_exact(const LinearSymbolGrid& tau1, const LinearSymbolGrid& tau2) {
  require_same_grid(tau1.grid, tau2.grid);
  const int N = tau1.grid.n_points;
  const CVec A = linear_matrix(tau1);
  const CVec B = linear_matrix(tau2);
  CVec C(A.size(), cplx(0.0));
  for (int p = 0; p < N; ++p)
    for (int q = 0; q < N; ++q) {
      const cplx a = A[static_cast<std::size_t>(p) * N + q];
      if (a == cplx(0.0)) continue;
      for (int k = 0; k < N; ++k) C[static_cast<std::size_t>(p) * N + k] += a * B[static_cast<std::size_t>(q) * N + k];
    }
  return symbol_from_matrix(tau1.grid, C);
}

SymbolGrid principal_conjugation_exact(const SymbolGrid& sigma, const LinearSymbolGrid& kappa) {
  if (!kappa.x_independent()) throw std::invalid_argument("the multiplier must be x-independent");
  LinearSymbolGrid inverse = kappa;
  for (auto& v : inverse.tensor) {
    if (v == cplx(0.0)) throw std::domain_error("multiplier vanishes at a lattice point");
    v = 1.0 / v;
  }
  return compose_left_exact(inverse, compose_right_exact(sigma, kappa, kappa));
}

// --- masks and comparisons -------------------------------------------------

int x_bandwidth(const SymbolGrid& sigma, double relative_tolerance) {
  if (sigma.x_independent()) return 0;
  const int N = sigma.grid.n_points;
  const std::size_t NN = static_cast<std::size_t>(N) * N;
  const CVec S = x_spectrum(sigma);
  double peak = 0.0;
  for (const auto& v : S) peak = std::max(peak, std::abs(v));
  int band = 0;
  for (int mi = 0; mi < N; ++mi)
    for (std::size_t q = 0; q < NN; ++q)
      if (std::abs(S[mi * NN + q]) > relative_tolerance * peak) {
        band = std::max(band, std::abs(signed_mode(mi, N)));
        break;
      }
  return band;
}

int x_bandwidth(const LinearSymbolGrid& tau, double relative_tolerance) {
  if (tau.x_independent()) return 0;
  const int N = tau.grid.n_points;
  const CVec S = x_spectrum(tau);
  double peak = 0.0;
  for (const auto& v : S) peak = std::max(peak, std::abs(v));
  int band = 0;
  for (int mi = 0; mi < N; ++mi)
    for (int q = 0; q < N; ++q)
      if (std::abs(S[static_cast<std::size_t>(mi) * N + q]) > relative_tolerance * peak) {
        band = std::max(band, std::abs(signed_mode(mi, N)));
        break;
      }
  return band;
}

std::vector<bool> adjoint_interior(const GridSpec& grid, int which, int x_band) {
  if (which != 1 && which != 2) throw std::invalid_argument("which must be 1 or 2");
  const int N = grid.n_points;
  std::vector<bool> mask(static_cast<std::size_t>(N) * N);
  for (int j = 0; j < N; ++j)
    for (int l = 0; l < N; ++l) {
      const long s = -static_cast<long>(grid.mode_of_index(j)) - grid.mode_of_index(l);
      mask[static_cast<std::size_t>(j) * N + l] = grid.on_lattice(s - x_band) && grid.on_lattice(s + x_band);
    }
  return mask;
}

std::vector<bool> compose_right_interior(const GridSpec& grid, int band1, int band2) {
  const int N = grid.n_points;
  std::vector<bool> mask(static_cast<std::size_t>(N) * N);
  for (int j = 0; j < N; ++j)
    for (int l = 0; l < N; ++l) {
      const long k = grid.mode_of_index(j), q = grid.mode_of_index(l);
      mask[static_cast<std::size_t>(j) * N + l] = grid.on_lattice(k - band1) && grid.on_lattice(k + band1) &&
                                                  grid.on_lattice(q - band2) && grid.on_lattice(q + band2);
    }
  return mask;
}

std::vector<bool> compose_left_interior(const GridSpec& grid, int sigma_band) {
  const int N = grid.n_points;
  std::vector<bool> mask(static_cast<std::size_t>(N) * N);
  for (int j = 0; j < N; ++j)
    for (int l = 0; l < N; ++l) {
      const long s = static_cast<long>(grid.mode_of_index(j)) + grid.mode_of_index(l);
      mask[static_cast<std::size_t>(j) * N + l] = grid.on_lattice(s - sigma_band) && grid.on_lattice(s + sigma_band);
    }
  return mask;
}

std::vector<bool> linear_interior(const GridSpec& grid, int band) {
  std::vector<bool> mask(grid.n_points);
  for (int p = 0; p < grid.n_points; ++p) {
    const long k = grid.mode_of_index(p);
    mask[p] = grid.on_lattice(k - band) && grid.on_lattice(k + band);
  }
  return mask;
}

double max_difference(const SymbolGrid& a, const SymbolGrid& b, const std::vector<bool>& mask) {
  require_same_grid(a.grid, b.grid);
  const int N = a.grid.n_points;
  const int extent = std::max(a.x_extent, b.x_extent);
  double worst = 0.0;
  for (int n = 0; n < extent; ++n)
    for (int j = 0; j < N; ++j)
      for (int l = 0; l < N; ++l) {
        if (!mask.empty() && !mask[static_cast<std::size_t>(j) * N + l]) continue;
        worst = std::max(worst, std::abs(a.at(n, j, l) - b.at(n, j, l)));
      }
  return worst;
}

double max_difference(const LinearSymbolGrid& a, const LinearSymbolGrid& b, const std::vector<bool>& mask) {
  require_same_grid(a.grid, b.grid);
  const int N = a.grid.n_points;
  const int extent = std::max(a.x_extent, b.x_extent);
  double worst = 0.0;
  for (int n = 0; n < extent; ++n)
    for (int p = 0; p < N; ++p) {
      if (!mask.empty() && !mask[p]) continue;
      worst = std::max(worst, std::abs(a.at(n, p) - b.at(n, p)));
    }
  return worst;
}

double max_abs(const SymbolGrid& a) {
  double m = 0.0;
  for (const auto& v : a.tensor) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace bipdo
