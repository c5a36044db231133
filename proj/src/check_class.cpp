// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "bipdo/parallel.hpp"
#include "bipdo/symbols.hpp"
#include "bipdo/tolerances.hpp"

namespace bipdo {

using namespace sym;

namespace {

double br(double u) { return std::sqrt(1.0 + u * u); }

std::pair<Direction, Direction> directions(ClassVariant v) {
  switch (v) {
    case ClassVariant::Star1: return {Direction::DAlpha, Direction::DBetaMinusAlpha};
    case ClassVariant::Star2: return {Direction::DAlphaMinusBeta, Direction::DBeta};
    default: return {Direction::DAlpha, Direction::DBeta};
  }
}

struct Sup {
  double value = 0.0;
  std::array<double, 3> point{};
};

}  // namespace

bool DecayReport::pass() const {
  return std::all_of(orders.begin(), orders.end(), [](const DecayEntry& e) { return e.pass; });
}

const DecayEntry& DecayReport::entry(int a, int b, int c) const {
  for (const auto& e : orders)
    if (e.a == a && e.b == b && e.c == c) return e;
  throw std::out_of_range("no decay entry for the requested derivative triple");
}

double class_weight(const ClassSpec& spec, int a, int b, int c, double al, double be) {
  const double t = line_slope(spec.theta);
  const double line = br(be - t * al);
  switch (spec.variant) {
    case ClassVariant::Classical:
      return std::pow(1.0 + al * al + be * be, (spec.m1 + spec.delta * a - spec.rho * (b + c)) / 2.0);
    case ClassVariant::ClassicalTheta:
      return std::pow(line, spec.m1 + spec.delta * a - spec.rho * (b + c));
    case ClassVariant::Plain:
      return std::pow(br(al), spec.m1) * std::pow(br(be), spec.m2) * std::pow(std::min(br(al), line), -b) *
             std::pow(std::min(br(be), line), -c);
    case ClassVariant::Star1:
      return std::pow(br(al + be), spec.m1) * std::pow(br(be), spec.m2) *
             std::pow(std::min(br(al + be), line), -b) * std::pow(std::min(br(be), line), -c);
    case ClassVariant::Star2:
      return std::pow(br(al), spec.m1) * std::pow(br(al + be), spec.m2) * std::pow(std::min(br(al), line), -b) *
             std::pow(std::min(br(al + be), line), -c);
  }
  return 1.0;
}

DecayReport measure_decay(const ComplexExpr& e, const ClassSpec& spec, const GridSpec& grid) {
  require_valid(e);
  const int N = grid.n_points;
  const int order = spec.max_deriv_order;
  const bool x_dep = depends_on(e, Var::X);
  const int x_count = x_dep ? N : 1;
  const auto [d1, d2] = directions(spec.variant);

  DecayReport report;
  report.spec = spec;
  for (int a = 0; a <= order; ++a) {
    const ComplexExpr ea = differentiate(e, Var::X, a);
    for (int b = 0; a + b <= order; ++b) {
      const ComplexExpr eb = directional_derivative(ea, d1, b);
      for (int c = 0; a + b + c <= order; ++c) {
        const ComplexExpr d = directional_derivative(eb, d2, c);
        DecayEntry entry;
        entry.a = a;
        entry.b = b;
        entry.c = c;
        if (d.re.is_const(0.0) && d.im.is_const(0.0)) {
          report.orders.push_back(entry);
          continue;
        }
        const CompiledExpr code(d);
        std::vector<Sup> rows(N);
        parallel_for(0, N, [&](std::size_t j) {
          Sup best;
          double v[2];
          const double al = grid.xi_at_index(static_cast<int>(j));
          for (int l = 0; l < N; ++l) {
            const double be = grid.xi_at_index(l);
            const double w = class_weight(spec, a, b, c, al, be);
            for (int n = 0; n < x_count; ++n) {
              const Point p = make_point(grid.x(n), al, be);
              code.eval(p, v);
              const double ratio = std::hypot(v[0], v[1]) / w;
              if (!std::isfinite(ratio)) throw std::domain_error("class check: derivative is not finite on the lattice");
              if (ratio > best.value) best = {ratio, {p[0], al, be}};
            }
          }
          rows[j] = best;
        });
        Sup best;
        for (const auto& r : rows)
          if (r.value > best.value) best = r;
        entry.constant = best.value;
        entry.worst_point = best.point;
        report.orders.push_back(entry);
      }
    }
  }
  return report;
}

std::vector<SymbolExpr> calibration_family(const ClassSpec& spec) {
  const Expr t(line_slope(spec.theta));
  const Expr line = atan(beta() - t * alpha());
  switch (spec.variant) {
    case ClassVariant::Classical: return {coifman_meyer_gauss()};
    case ClassVariant::ClassicalTheta: return {line, coifman_meyer_gauss()};
    case ClassVariant::Plain: return {line, atan(alpha()) * atan(beta()), coifman_meyer_gauss()};
    case ClassVariant::Star1: return {line, atan(alpha() + beta()) * atan(beta()), coifman_meyer_gauss()};
    case ClassVariant::Star2: return {line, atan(alpha()) * atan(alpha() + beta()), coifman_meyer_gauss()};
  }
  return {};
}

namespace {

using CalibrationKey = std::tuple<int, double, double, double, int, int, double>;

// Ceiling per (a, b, c) at order zero; cached because calibration dominates repeated checks.
std::map<std::tuple<int, int, int>, double> calibrate(const ClassSpec& spec, const GridSpec& grid) {
  static std::mutex mutex;
  static std::map<CalibrationKey, std::map<std::tuple<int, int, int>, double>> cache;
  const CalibrationKey key{static_cast<int>(spec.variant), spec.theta, spec.rho, spec.delta, spec.max_deriv_order,
                           grid.n_points, grid.period};
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  ClassSpec base = spec;
  base.m1 = 0.0;
  base.m2 = 0.0;
  std::map<std::tuple<int, int, int>, double> raw;
  double global = 0.0;
  for (const auto& cal : calibration_family(spec)) {
    const DecayReport r = measure_decay(ComplexExpr(cal), base, grid);
    for (const auto& e : r.orders) {
      auto& slot = raw[{e.a, e.b, e.c}];
      slot = std::max(slot, e.constant);
      global = std::max(global, e.constant);
    }
  }
  std::map<std::tuple<int, int, int>, double> ceilings;
  for (const auto& [abc, value] : raw) {
    const auto [a, b, c] = abc;
    double m = 0.0;
    for (int ap = 0; ap <= a; ++ap) m = std::max(m, raw.at({ap, b, c}));
    if (m == 0.0) m = global;
    ceilings[abc] = tolerances::kClassCeilingFactor * m;
  }
  std::lock_guard lock(mutex);
  cache.emplace(key, ceilings);
  return ceilings;
}

}  // namespace

DecayReport check_class(const ComplexExpr& e, const ClassSpec& spec, const GridSpec& grid,
                        const CheckOptions& options) {
  DecayReport report = measure_decay(e, spec, grid);
  std::map<std::tuple<int, int, int>, double> ceilings;
  if (!options.ceiling) ceilings = calibrate(spec, grid);
  for (auto& entry : report.orders) {
    entry.ceiling = options.ceiling ? *options.ceiling : ceilings.at({entry.a, entry.b, entry.c});
    entry.pass = std::isfinite(entry.constant) && entry.constant <= entry.ceiling;
  }
  return report;
}

}  // namespace bipdo
