// SPDX-License-Identifier: Apache-2.0
#include "bipdo/symbols.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bipdo/parallel.hpp"

namespace bipdo {

const char* variant_name(ClassVariant v) {
  switch (v) {
    case ClassVariant::Classical: return "classical";
    case ClassVariant::ClassicalTheta: return "classical_theta";
    case ClassVariant::Plain: return "plain";
    case ClassVariant::Star1: return "star1";
    case ClassVariant::Star2: return "star2";
  }
  return "?";
}

ClassVariant variant_from_name(const std::string& name) {
  for (ClassVariant v : {ClassVariant::Classical, ClassVariant::ClassicalTheta, ClassVariant::Plain,
                         ClassVariant::Star1, ClassVariant::Star2})
    if (name == variant_name(v)) return v;
  if (name == "classical-theta") return ClassVariant::ClassicalTheta;
  throw std::invalid_argument("unknown class variant '" + name + "'");
}

bool ClassSpec::degenerate_angle() const {
  constexpr double eps = 1e-12;
  return std::fabs(theta) < eps || std::fabs(theta + std::numbers::pi / 4) < eps;
}

ClassSpec make_class_spec(ClassVariant variant, double m1, double m2, double theta, int max_deriv_order,
                          double rho, double delta) {
  if (!(std::fabs(theta) < std::numbers::pi / 2)) throw std::invalid_argument("theta must lie in (-pi/2, pi/2)");
  if (max_deriv_order < 0 || max_deriv_order > 4) throw std::invalid_argument("max_deriv_order must be in [0, 4]");
  if (!(rho >= 0 && rho <= 1) || !(delta >= 0 && delta <= 1))
    throw std::invalid_argument("rho and delta must lie in [0, 1]");
  if (!std::isfinite(m1) || !std::isfinite(m2)) throw std::invalid_argument("orders must be finite");
  ClassSpec s;
  s.variant = variant;
  s.m1 = m1;
  s.m2 = variant == ClassVariant::Classical || variant == ClassVariant::ClassicalTheta ? 0.0 : m2;
  s.theta = theta;
  s.max_deriv_order = max_deriv_order;
  const bool two_orders = variant != ClassVariant::Classical && variant != ClassVariant::ClassicalTheta;
  s.rho = two_orders ? 1.0 : rho;
  s.delta = two_orders ? 0.0 : delta;
  return s;
}

double line_slope(double theta) {
  const double t = std::tan(theta);
  const double r = std::round(t);
  if (std::fabs(t - r) <= 8 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(t))) return r;
  return t;
}

SymbolGrid make_symbol_grid(const GridSpec& grid, int x_extent) {
  SymbolGrid s;
  s.grid = grid;
  s.x_extent = x_extent;
  const std::size_t N = grid.n_points;
  s.tensor.assign(static_cast<std::size_t>(x_extent) * N * N, cplx(0.0));
  return s;
}

SymbolGrid SymbolGrid::expanded() const {
  if (!x_independent()) return *this;
  SymbolGrid out = make_symbol_grid(grid, grid.n_points);
  out.source = source;
  out.claimed_class = claimed_class;
  const std::size_t slice = static_cast<std::size_t>(grid.n_points) * grid.n_points;
  for (int n = 0; n < grid.n_points; ++n)
    std::copy(tensor.begin(), tensor.begin() + slice, out.tensor.begin() + n * slice);
  return out;
}

SymbolGrid sample_symbol(const ComplexExpr& e, const GridSpec& grid) {
  sym::require_valid(e);
  const int N = grid.n_points;
  const int extent = sym::depends_on(e, sym::Var::X) ? N : 1;
  SymbolGrid out = make_symbol_grid(grid, extent);
  out.source = e;
  const sym::CompiledExpr code(e);
  parallel_for(0, static_cast<std::size_t>(extent) * N, [&](std::size_t row) {
    const int n = static_cast<int>(row / N);
    const int j = static_cast<int>(row % N);
    double v[2];
    for (int l = 0; l < N; ++l) {
      const sym::Point p = sym::make_point(grid.x(n), grid.xi_at_index(j), grid.xi_at_index(l));
      code.eval(p, v);
      if (!std::isfinite(v[0]) || !std::isfinite(v[1])) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "symbol is not finite at (x, alpha, beta) = (%.17g, %.17g, %.17g)", p[0],
                      p[2], p[3]);
        throw std::domain_error(buf);
      }
      out.at(n, j, l) = {v[0], v[1]};
    }
  });
  return out;
}

SplitSymbol split_symbol(const ComplexExpr& sigma, const std::optional<SymbolExpr>& bump) {
  using namespace sym;
  const Expr phi = bump ? *bump : cutoff(xi());
  auto at = [&](const Expr& u) { return substitute(phi, Var::Xi, u); };
  const Expr window = at(alpha() - beta()) * at(alpha()) * at(beta());
  const ComplexExpr low = sigma * ComplexExpr(window);
  const ComplexExpr high = sigma * ComplexExpr(Expr(1.0) - window);
  return {low, high};
}

double amnorm(const SymbolExpr& a, double m, const GridSpec& grid, int j_max, int l_max) {
  using namespace sym;
  if (j_max < 0 || l_max < 0) throw std::invalid_argument("derivative orders must be non-negative");
  require_valid(a);
  const int N = grid.n_points;
  double best = 0.0;
  for (int j = 0; j <= j_max; ++j) {
    const Expr dy = differentiate(a, Var::Y, j);
    for (int l = 0; l <= l_max; ++l) {
      const CompiledExpr code(differentiate(dy, Var::Alpha, l));
      std::vector<double> row_max(N, 0.0);
      parallel_for(0, N, [&](std::size_t n) {
        Point p{};
        const double yv = (static_cast<int>(n) - N / 2) * grid.dx();
        p[static_cast<int>(Var::Y)] = yv;
        double local = 0.0;
        for (int k = 0; k < N; ++k) {
          const double av = grid.xi_at_index(k);
          p[static_cast<int>(Var::Alpha)] = av;
          const double v = std::fabs(code.eval1(p)) * std::pow(1.0 + std::fabs(yv) + std::fabs(av), -m);
          if (!std::isfinite(v)) throw std::domain_error("A^m norm: derivative is not finite on the lattice");
          local = std::max(local, v);
        }
        row_max[n] = local;
      });
      for (double v : row_max) best = std::max(best, v);
    }
  }
  return best;
}

}  // namespace bipdo
