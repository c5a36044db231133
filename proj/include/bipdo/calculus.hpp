// SPDX-License-Identifier: Apache-2.0
//
// Adjoints and compositions: exact symbols extracted from the discrete operators, and
// the asymptotic expansions built from exact derivatives.
//
// Bilinear adjoints are transposes for the bilinear pairing <u, v> = sum u v dx:
//   <T_sigma(f, g), h> = <T_{sigma*1}(h, g), f> = <T_{sigma*2}(f, h), g>.
// Linear adjoints are Hilbert-space adjoints for (u, v) = sum u conj(v) dx.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bipdo/quantize.hpp"
#include "bipdo/symbols.hpp"

namespace bipdo {

// --- angles and the duality table ------------------------------------------

/// which = 1: cot(theta) + cot(theta*) = -1;  which = 2: tan(theta) + tan(theta*) = -1.
double adjoint_angle(double theta, int which);

ClassSpec duality_class_map(const ClassSpec& spec, int which);

// --- expansions ------------------------------------------------------------

/// (re + i im) / den with small integers; i^k / k! and its products are exact.
struct ComplexRational {
  std::int64_t re = 1;
  std::int64_t im = 0;
  std::int64_t den = 1;
  double real() const { return static_cast<double>(re) / static_cast<double>(den); }
  double imag() const { return static_cast<double>(im) / static_cast<double>(den); }
};

/// (sign * i)^k / k!, sign = +1 or -1.
ComplexRational i_power_over_factorial(int k, int sign = 1);
ComplexRational operator*(const ComplexRational& a, const ComplexRational& b);

struct ExpansionTerm {
  int k = 0;
  int j = 0;
  ComplexRational coefficient;
  ComplexExpr derivative;  // without the coefficient
  ComplexExpr scaled() const;
};

struct ExpansionSeries {
  std::string kind;  // adjoint, compose_right, compose_left, linear_adjoint, linear_compose
  int which = 0;
  int n_terms = 0;
  int p_terms = 0;
  std::vector<ExpansionTerm> terms;
  std::optional<ClassSpec> remainder_class;

  ComplexExpr sum() const;
};

/// Term k: (i^k / k!) * (d_x^k d_slot^k sigma) at slot = -alpha - beta, where slot is alpha for
/// which = 1 and beta for which = 2. Keeps k = 0 .. n_terms - 1.
ExpansionSeries adjoint_expansion(const ComplexExpr& sigma, int which, int n_terms,
                                  const std::optional<ClassSpec>& spec = std::nullopt);

/// Term (k, j): ((-i)^k / k!) ((-i)^j / j!) d_x^k tau1(x, alpha) d_x^j tau2(x, beta) d_alpha^k d_beta^j sigma.
/// tau1 and tau2 are expressions over (x, xi).
ExpansionSeries compose_right_expansion(const ComplexExpr& sigma, const ComplexExpr& tau1, const ComplexExpr& tau2,
                                        int n_terms, int p_terms, const std::optional<ClassSpec>& spec = std::nullopt,
                                        double t1 = 0.0, double t2 = 0.0);

/// Term k: ((-i)^k / k!) (d_xi^k tau)(x, alpha + beta) d_x^k sigma.
ExpansionSeries compose_left_expansion(const ComplexExpr& tau, const ComplexExpr& sigma, int n_terms,
                                       const std::optional<ClassSpec>& spec = std::nullopt, double t = 0.0);

/// Term k: ((-i)^k / k!) d_xi^k d_x^k conj(tau).
ExpansionSeries linear_adjoint_expansion(const ComplexExpr& tau, int n_terms);

/// Term k: ((-i)^k / k!) d_xi^k tau1 d_x^k tau2.
ExpansionSeries linear_compose_expansion(const ComplexExpr& tau1, const ComplexExpr& tau2, int n_terms);

/// kappa(alpha) kappa(beta) / kappa(alpha + beta) * sigma, for kappa over xi.
ComplexExpr principal_conjugation(const ComplexExpr& sigma, const SymbolExpr& kappa, const GridSpec* grid = nullptr);

// --- exact discrete symbols ------------------------------------------------

SymbolGrid adjoint_exact(const SymbolGrid& sigma, int which);
SymbolGrid compose_right_exact(const SymbolGrid& sigma, const LinearSymbolGrid& tau1, const LinearSymbolGrid& tau2);
SymbolGrid compose_left_exact(const LinearSymbolGrid& tau, const SymbolGrid& sigma);
LinearSymbolGrid linear_adjoint_exact(const LinearSymbolGrid& tau);
LinearSymbolGrid linear_compose_exact(const LinearSymbolGrid& tau1, const LinearSymbolGrid& tau2);

/// Symbol of kappa(D)^{-1} T_sigma(kappa(D) f, kappa(D) g) for an x-independent multiplier.
SymbolGrid principal_conjugation_exact(const SymbolGrid& sigma, const LinearSymbolGrid& kappa);

/// Largest |m| with a non-negligible x-Fourier coefficient.
int x_bandwidth(const SymbolGrid& sigma, double relative_tolerance = 1e-13);
int x_bandwidth(const LinearSymbolGrid& tau, double relative_tolerance = 1e-13);

/// Frequency pairs (j, l) whose exact symbol involves no lattice wrap-around; row-major N*N.
/// On these points the exact symbols coincide with the continuum formulas.
std::vector<bool> adjoint_interior(const GridSpec& grid, int which, int x_band);
std::vector<bool> compose_right_interior(const GridSpec& grid, int band1, int band2);
std::vector<bool> compose_left_interior(const GridSpec& grid, int sigma_band);
std::vector<bool> linear_interior(const GridSpec& grid, int band);

/// max |a - b| over x and the masked (j, l) pairs; an empty mask means every pair.
double max_difference(const SymbolGrid& a, const SymbolGrid& b, const std::vector<bool>& mask = {});
double max_difference(const LinearSymbolGrid& a, const LinearSymbolGrid& b, const std::vector<bool>& mask = {});
double max_abs(const SymbolGrid& a);

}  // namespace bipdo
