// SPDX-License-Identifier: Apache-2.0
#include <stdexcept>

#include "bipdo/calculus.hpp"

namespace bipdo {

using namespace sym;

ComplexRational i_power_over_factorial(int k, int sign) {
  if (k < 0) throw std::invalid_argument("negative expansion index");
  std::int64_t fact = 1;
  for (int q = 2; q <= k; ++q)
    if (__builtin_mul_overflow(fact, static_cast<std::int64_t>(q), &fact))
      throw std::overflow_error("expansion order too large for exact coefficients");
  // (sign i)^k cycles through 1, sign i, -1, -sign i.
  static constexpr int kRe[4] = {1, 0, -1, 0};
  static constexpr int kIm[4] = {0, 1, 0, -1};
  return {kRe[k % 4], kIm[k % 4] * sign, fact};
}

ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
  ComplexRational r;
  std::int64_t den;
  if (__builtin_mul_overflow(a.den, b.den, &den)) throw std::overflow_error("expansion coefficient overflow");
  r.re = a.re * b.re - a.im * b.im;
  r.im = a.re * b.im + a.im * b.re;
  r.den = den;
  return r;
}

ComplexExpr ExpansionTerm::scaled() const { return scale(derivative, coefficient.real(), coefficient.imag()); }

ComplexExpr ExpansionSeries::sum() const {
  ComplexExpr total(Expr(0.0));
  for (const auto& t : terms) total = total + t.scaled();
  return total;
}

namespace {

void require_terms(int n, const char* what) {
  if (n < 0) throw std::invalid_argument(std::string(what) + " must be non-negative");
}

ComplexExpr over(const ComplexExpr& e, Var from, const Expr& to) { return substitute(e, from, to); }

}  // namespace

ExpansionSeries adjoint_expansion(const ComplexExpr& sigma, int which, int n_terms,
                                  const std::optional<ClassSpec>& spec) {
  if (which != 1 && which != 2) throw std::invalid_argument("which must be 1 or 2");
  require_terms(n_terms, "number of terms");
  require_valid(sigma);
  ExpansionSeries s;
  s.kind = "adjoint";
  s.which = which;
  s.n_terms = n_terms;
  const Var slot = which == 1 ? Var::Alpha : Var::Beta;
  const Expr reflected = -alpha() - beta();
  ComplexExpr dx = sigma;
  for (int k = 0; k < n_terms; ++k) {
    if (k > 0) dx = differentiate(dx, Var::X);
    const ComplexExpr d = differentiate(dx, slot, k);
    s.terms.push_back({k, 0, i_power_over_factorial(k, +1), over(d, slot, reflected)});
  }
  if (spec) {
    ClassSpec r = duality_class_map(*spec, which);
    (which == 1 ? r.m1 : r.m2) -= n_terms;
    s.remainder_class = r;
  }
  return s;
}

ExpansionSeries compose_right_expansion(const ComplexExpr& sigma, const ComplexExpr& tau1, const ComplexExpr& tau2,
                                        int n_terms, int p_terms, const std::optional<ClassSpec>& spec, double t1,
                                        double t2) {
  require_terms(n_terms, "number of terms");
  require_terms(p_terms, "number of terms");
  require_valid(sigma);
  ExpansionSeries s;
  s.kind = "compose_right";
  s.n_terms = n_terms;
  s.p_terms = p_terms;
  const ComplexExpr t1a = over(tau1, Var::Xi, alpha());
  const ComplexExpr t2b = over(tau2, Var::Xi, beta());
  ComplexExpr dt1 = t1a;
  for (int k = 0; k < n_terms; ++k) {
    if (k > 0) dt1 = differentiate(dt1, Var::X);
    const ComplexExpr sk = differentiate(sigma, Var::Alpha, k);
    ComplexExpr dt2 = t2b;
    for (int j = 0; j < p_terms; ++j) {
      if (j > 0) dt2 = differentiate(dt2, Var::X);
      const ComplexExpr term = dt1 * dt2 * differentiate(sk, Var::Beta, j);
      s.terms.push_back({k, j, i_power_over_factorial(k, -1) * i_power_over_factorial(j, -1), term});
    }
  }
  if (spec) {
    ClassSpec r = *spec;
    r.m1 += t1 - n_terms;
    r.m2 += t2 - p_terms;
    s.remainder_class = r;
  }
  return s;
}

ExpansionSeries compose_left_expansion(const ComplexExpr& tau, const ComplexExpr& sigma, int n_terms,
                                       const std::optional<ClassSpec>& spec, double t) {
  require_terms(n_terms, "number of terms");
  require_valid(sigma);
  require_valid(tau);
  ExpansionSeries s;
  s.kind = "compose_left";
  s.n_terms = n_terms;
  ComplexExpr dsig = sigma;
  for (int k = 0; k < n_terms; ++k) {
    if (k > 0) dsig = differentiate(dsig, Var::X);
    const ComplexExpr dtau = over(differentiate(tau, Var::Xi, k), Var::Xi, alpha() + beta());
    s.terms.push_back({k, 0, i_power_over_factorial(k, -1), dtau * dsig});
  }
  if (spec) {
    ClassSpec r = *spec;
    r.m1 += t - n_terms;
    r.m2 -= n_terms;
    s.remainder_class = r;
  }
  return s;
}

ExpansionSeries linear_adjoint_expansion(const ComplexExpr& tau, int n_terms) {
  require_terms(n_terms, "number of terms");
  require_valid(tau);
  ExpansionSeries s;
  s.kind = "linear_adjoint";
  s.n_terms = n_terms;
  ComplexExpr d = conj(tau);
  for (int k = 0; k < n_terms; ++k) {
    if (k > 0) d = differentiate(d, Var::X);
    s.terms.push_back({k, 0, i_power_over_factorial(k, -1), differentiate(d, Var::Xi, k)});
  }
  return s;
}

ExpansionSeries linear_compose_expansion(const ComplexExpr& tau1, const ComplexExpr& tau2, int n_terms) {
  require_terms(n_terms, "number of terms");
  require_valid(tau1);
  require_valid(tau2);
  ExpansionSeries s;
  s.kind = "linear_compose";
  s.n_terms = n_terms;
  ComplexExpr d1 = tau1, d2 = tau2;
  for (int k = 0; k < n_terms; ++k) {
    if (k > 0) {
      d1 = differentiate(d1, Var::Xi);
      d2 = differentiate(d2, Var::X);
    }
    s.terms.push_back({k, 0, i_power_over_factorial(k, -1), d1 * d2});
  }
  return s;
}

ComplexExpr principal_conjugation(const ComplexExpr& sigma, const SymbolExpr& kappa, const GridSpec* grid) {
  require_valid(kappa);
  if (grid) {
    const CompiledExpr code(kappa);
    for (int k = 2 * grid->min_mode(); k <= 2 * grid->max_mode(); ++k) {
      Point p{};
      p[static_cast<int>(Var::Xi)] = k * grid->dxi();
      if (code.eval1(p) == 0.0) throw std::domain_error("kappa vanishes at lattice frequency " + std::to_string(k));
    }
  }
  const Expr factor = substitute(kappa, Var::Xi, alpha()) * substitute(kappa, Var::Xi, beta()) /
                      substitute(kappa, Var::Xi, alpha() + beta());
  const ComplexExpr out = ComplexExpr(factor) * sigma;
  require_valid(out);
  return out;
}

}  // namespace bipdo
