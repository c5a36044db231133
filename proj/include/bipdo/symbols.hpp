// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bipdo/lattice.hpp"
#include "bipdo/symlang.hpp"

namespace bipdo {

using sym::ComplexExpr;
using SymbolExpr = sym::Expr;

enum class ClassVariant { Classical, ClassicalTheta, Plain, Star1, Star2 };

const char* variant_name(ClassVariant v);
ClassVariant variant_from_name(const std::string& name);

/// Decay law claimed by a bilinear symbol.
struct ClassSpec {
  double m1 = 0.0;
  double m2 = 0.0;
  double rho = 1.0;
  double delta = 0.0;
  double theta = 0.0;
  ClassVariant variant = ClassVariant::Plain;
  int max_deriv_order = 2;

  /// Positive part (|m| + m) / 2.
  static double positive_part(double m) { return (std::abs(m) + m) / 2.0; }
  double m1_plus() const { return positive_part(m1); }
  double m2_plus() const { return positive_part(m2); }
  /// theta in {0, -pi/4}: allowed for class checks, excluded from continuity claims.
  bool degenerate_angle() const;
};

/// Validates ranges and forces rho = 1, delta = 0 for the two-order variants.
ClassSpec make_class_spec(ClassVariant variant, double m1, double m2, double theta, int max_deriv_order = 2,
                          double rho = 1.0, double delta = 0.0);

/// tan(theta), snapped to the nearest integer when within rounding of it (tan(pi/4) = 1).
double line_slope(double theta);

/// Samples sigma(x_n, alpha_k, beta_l). x-independent symbols store a single x-slice.
struct SymbolGrid {
  GridSpec grid;
  int x_extent = 1;
  CVec tensor;  // [(n * N + j) * N + l], j, l centered indices
  std::optional<ComplexExpr> source;
  std::optional<ClassSpec> claimed_class;

  bool x_independent() const { return x_extent == 1; }
  std::size_t offset(int n, int j, int l) const {
    const std::size_t N = grid.n_points;
    return ((static_cast<std::size_t>(x_extent == 1 ? 0 : n) * N) + j) * N + l;
  }
  cplx at(int n, int j, int l) const { return tensor[offset(n, j, l)]; }
  cplx& at(int n, int j, int l) { return tensor[offset(n, j, l)]; }
  /// Copy with an explicit x axis of length N.
  SymbolGrid expanded() const;
};

SymbolGrid make_symbol_grid(const GridSpec& grid, int x_extent);

SymbolGrid sample_symbol(const ComplexExpr& e, const GridSpec& grid);

// --- builtin families ------------------------------------------------------

struct BuiltinParams {
  double theta = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  std::optional<SymbolExpr> profile;     // tau(x, xi); default atan(xi)
  std::optional<SymbolExpr> profile_v;   // second profile for products; default = profile
};

SymbolExpr coifman_meyer_gauss();
SymbolExpr theta_line(double theta, const SymbolExpr& profile);
SymbolExpr marcinkiewicz_product(const SymbolExpr& u, const SymbolExpr& v);
/// Omega(alpha, beta) = log(2 + log(1 + (1 + <beta>) / (1 + <alpha>))).
SymbolExpr omega_weight();
/// Omega^-2 * atan(alpha) * atan(beta - tan(theta) alpha).
SymbolExpr omega_weighted(double theta);
SymbolExpr order_weight(double m1, double m2);
SymbolExpr smooth_bump(const SymbolExpr& u);
SymbolExpr builtin(const std::string& name, const BuiltinParams& params = {});
std::vector<std::string> builtin_names();

// --- class membership ------------------------------------------------------

struct DecayEntry {
  int a = 0, b = 0, c = 0;
  double constant = 0.0;
  double ceiling = 0.0;
  std::array<double, 3> worst_point{};  // (x, alpha, beta)
  bool pass = false;
};

struct DecayReport {
  ClassSpec spec;
  std::vector<DecayEntry> orders;
  bool pass() const;
  const DecayEntry& entry(int a, int b, int c) const;
};

struct CheckOptions {
  /// Replaces the calibrated per-triple ceilings.
  std::optional<double> ceiling;
};

/// The weight bounding |D^{a,b,c} sigma| for a class; brackets are smoothed.
double class_weight(const ClassSpec& spec, int a, int b, int c, double alpha, double beta);

/// Raw constants sup |D^{a,b,c} sigma| / weight over the lattice, no ceilings applied.
DecayReport measure_decay(const ComplexExpr& e, const ClassSpec& spec, const GridSpec& grid);

/// Symbols whose measured constants define the ceilings of a class variant.
std::vector<SymbolExpr> calibration_family(const ClassSpec& spec);

DecayReport check_class(const ComplexExpr& e, const ClassSpec& spec, const GridSpec& grid,
                        const CheckOptions& options = {});

// --- frequency splitting and the A^m norm ----------------------------------

struct SplitSymbol {
  ComplexExpr low;   // sigma * Phi(alpha - beta) Phi(alpha) Phi(beta)
  ComplexExpr high;  // sigma * (1 - Phi(alpha - beta) Phi(alpha) Phi(beta))
};

SplitSymbol split_symbol(const ComplexExpr& sigma, const std::optional<SymbolExpr>& bump = std::nullopt);

/// max over j <= j_max, l <= l_max and the (y, alpha) lattice of (1+|y|+|alpha|)^-m |d_y^j d_alpha^l a|;
/// y is sampled symmetrically as (n - N/2) dx.
double amnorm(const SymbolExpr& a, double m, const GridSpec& grid, int j_max, int l_max);

}  // namespace bipdo
