// SPDX-License-Identifier: Apache-2.0
#include "bipdo/quantize.hpp"

#include <cmath>
#include <stdexcept>

#include "bipdo/parallel.hpp"

namespace bipdo {

namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw std::invalid_argument("operands live on different grids");
}

}  // namespace

LinearSymbolGrid make_linear_symbol_grid(const GridSpec& grid, int x_extent) {
  LinearSymbolGrid t;
  t.grid = grid;
  t.x_extent = x_extent;
  t.tensor.assign(static_cast<std::size_t>(x_extent) * grid.n_points, cplx(0.0));
  return t;
}

LinearSymbolGrid sample_linear_symbol(const ComplexExpr& e, const GridSpec& grid) {
  using namespace sym;
  require_valid(e);
  const int N = grid.n_points;
  const int extent = depends_on(e, Var::X) ? N : 1;
  LinearSymbolGrid out = make_linear_symbol_grid(grid, extent);
  out.source = e;
  const CompiledExpr code(e);
  for (int n = 0; n < extent; ++n) {
    for (int j = 0; j < N; ++j) {
      Point p{};
      p[static_cast<int>(Var::X)] = grid.x(n);
      p[static_cast<int>(Var::Xi)] = grid.xi_at_index(j);
      double v[2];
      code.eval(p, v);
      if (!std::isfinite(v[0]) || !std::isfinite(v[1]))
        throw std::domain_error("linear symbol is not finite at x = " + std::to_string(p[0]) +
                                ", xi = " + std::to_string(p[4]));
      out.at(n, j) = {v[0], v[1]};
    }
  }
  return out;
}

SampledFunction sample_function(const ComplexExpr& e, const GridSpec& grid) {
  using namespace sym;
  require_valid(e);
  const CompiledExpr code(e);
  CVec samples(grid.n_points);
  for (int n = 0; n < grid.n_points; ++n) {
    Point p{};
    p[static_cast<int>(Var::X)] = grid.x(n);
    double v[2];
    code.eval(p, v);
    if (!std::isfinite(v[0]) || !std::isfinite(v[1]))
      throw std::domain_error("function is not finite at x = " + std::to_string(p[0]));
    samples[n] = {v[0], v[1]};
  }
  return SampledFunction::from_samples(grid, std::move(samples));
}

SampledFunction apply_bilinear(const SymbolGrid& sigma, const SampledFunction& f, const SampledFunction& g,
                               ApplyPath path) {
  require_same_grid(sigma.grid, f.grid());
  require_same_grid(sigma.grid, g.grid());
  const GridSpec& grid = sigma.grid;
  const int N = grid.n_points;
  const CVec& fh = f.spectrum();
  const CVec& gh = g.spectrum();

  if (path == ApplyPath::Fast && !sigma.x_independent())
    throw std::invalid_argument("the fast path requires an x-independent symbol");
  if (path == ApplyPath::Fast || (path == ApplyPath::Auto && sigma.x_independent())) {
    // out(x_n) = sum_s C_s exp(i xi_s x_n) with C_s summing the anti-diagonal k + l = s mod N.
    CVec diag(N, cplx(0.0));
    for (int j = 0; j < N; ++j) {
      if (fh[j] == cplx(0.0)) continue;
      const int kj = grid.mode_of_index(j);
      for (int l = 0; l < N; ++l) {
        const int s = grid.wrap(static_cast<long>(kj) + grid.mode_of_index(l));
        diag[grid.index_of_mode(s)] += sigma.at(0, j, l) * fh[j] * gh[l];
      }
    }
    return SampledFunction::from_spectrum(grid, std::move(diag));
  }

  const CVec E = phase_table(grid);
  CVec out(N);
  parallel_for(0, N, [&](std::size_t n) {
    const cplx* e = &E[n * N];
    cplx acc = 0.0;
    for (int j = 0; j < N; ++j) {
      if (fh[j] == cplx(0.0)) continue;
      cplx inner = 0.0;
      for (int l = 0; l < N; ++l) inner += sigma.at(static_cast<int>(n), j, l) * gh[l] * e[l];
      acc += fh[j] * e[j] * inner;
    }
    out[n] = acc;
  });
  return SampledFunction::from_samples(grid, std::move(out));
}

SampledFunction apply_linear(const LinearSymbolGrid& tau, const SampledFunction& f) {
  require_same_grid(tau.grid, f.grid());
  const GridSpec& grid = tau.grid;
  const int N = grid.n_points;
  const CVec& fh = f.spectrum();
  if (tau.x_independent()) {
    CVec spec(N);
    for (int j = 0; j < N; ++j) spec[j] = tau.at(0, j) * fh[j];
    return SampledFunction::from_spectrum(grid, std::move(spec));
  }
  const CVec E = phase_table(grid);
  CVec out(N);
  for (int n = 0; n < N; ++n) {
    cplx acc = 0.0;
    for (int j = 0; j < N; ++j) acc += tau.at(n, j) * fh[j] * E[static_cast<std::size_t>(n) * N + j];
    out[n] = acc;
  }
  return SampledFunction::from_samples(grid, std::move(out));
}

SampledFunction apply_Jm(double s, const SampledFunction& f) {
  const GridSpec& grid = f.grid();
  CVec spec = f.spectrum();
  if (s == 0.0) return f;
  for (int j = 0; j < grid.n_points; ++j) {
    const double xi = grid.xi_at_index(j);
    spec[j] *= std::pow(1.0 + xi * xi, s / 2.0);
  }
  return SampledFunction::from_spectrum(grid, std::move(spec));
}

}  // namespace bipdo
