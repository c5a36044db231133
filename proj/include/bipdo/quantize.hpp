// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "bipdo/lattice.hpp"
#include "bipdo/symbols.hpp"

namespace bipdo {

/// Samples tau(x_n, xi_k); x-independent symbols store a single x-slice.
struct LinearSymbolGrid {
  GridSpec grid;
  int x_extent = 1;
  CVec tensor;  // [n * N + j]
  std::optional<ComplexExpr> source;

  bool x_independent() const { return x_extent == 1; }
  std::size_t offset(int n, int j) const {
    return static_cast<std::size_t>(x_extent == 1 ? 0 : n) * grid.n_points + j;
  }
  cplx at(int n, int j) const { return tensor[offset(n, j)]; }
  cplx& at(int n, int j) { return tensor[offset(n, j)]; }
};

LinearSymbolGrid make_linear_symbol_grid(const GridSpec& grid, int x_extent);
/// Samples an expression over (x, xi).
LinearSymbolGrid sample_linear_symbol(const ComplexExpr& e, const GridSpec& grid);

enum class ApplyPath { Auto, Reference, Fast };

/// out(x_n) = sum_{k,l} sigma(x_n, alpha_k, beta_l) f^_k g^_l exp(i x_n (alpha_k + beta_l)).
/// The reference path is the O(N^3) triple sum; the fast path (x-independent symbols only)
/// collects sigma f^ g^ along anti-diagonals modulo N and applies one inverse DFT.
SampledFunction apply_bilinear(const SymbolGrid& sigma, const SampledFunction& f, const SampledFunction& g,
                               ApplyPath path = ApplyPath::Auto);

SampledFunction apply_linear(const LinearSymbolGrid& tau, const SampledFunction& f);

/// Bessel lift: spectrum_k -> (1 + xi_k^2)^{s/2} spectrum_k.
SampledFunction apply_Jm(double s, const SampledFunction& f);

/// Samples a complex expression over x into a function on the grid.
SampledFunction sample_function(const ComplexExpr& e, const GridSpec& grid);

}  // namespace bipdo
