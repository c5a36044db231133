// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bipdo/symbols.hpp"

namespace bipdo {

using namespace sym;

namespace {

void check_line_angle(double theta) {
  if (!(std::fabs(theta) < std::numbers::pi / 2))
    throw std::invalid_argument("theta must lie strictly inside (-pi/2, pi/2)");
}

}  // namespace

SymbolExpr coifman_meyer_gauss() { return exp(-(pow(alpha(), 2) + pow(beta(), 2))); }

SymbolExpr theta_line(double theta, const SymbolExpr& profile) {
  check_line_angle(theta);
  return substitute(profile, Var::Xi, beta() - Expr(line_slope(theta)) * alpha());
}

SymbolExpr marcinkiewicz_product(const SymbolExpr& u, const SymbolExpr& v) {
  return substitute(u, Var::Xi, alpha()) * substitute(v, Var::Xi, beta());
}

SymbolExpr omega_weight() {
  // The inner logarithm is positive, so the absolute value around it is dropped.
  const Expr ratio = (Expr(1.0) + bracket(beta())) / (Expr(1.0) + bracket(alpha()));
  return log(Expr(2.0) + log(Expr(1.0) + ratio));
}

SymbolExpr omega_weighted(double theta) {
  check_line_angle(theta);
  return pow(omega_weight(), -2.0) * atan(alpha()) * atan(beta() - Expr(line_slope(theta)) * alpha());
}

SymbolExpr order_weight(double m1, double m2) { return pow(bracket(alpha()), m1) * pow(bracket(beta()), m2); }

SymbolExpr smooth_bump(const SymbolExpr& u) { return cutoff(u); }

std::vector<std::string> builtin_names() {
  return {"coifman_meyer_gauss", "theta_line", "marcinkiewicz_product", "omega_weighted", "order_weight",
          "smooth_bump"};
}

SymbolExpr builtin(const std::string& name, const BuiltinParams& params) {
  const Expr profile = params.profile ? *params.profile : atan(xi());
  if (name == "coifman_meyer_gauss") return coifman_meyer_gauss();
  if (name == "theta_line") return theta_line(params.theta, profile);
  if (name == "marcinkiewicz_product")
    return marcinkiewicz_product(profile, params.profile_v ? *params.profile_v : profile);
  if (name == "omega_weighted") return omega_weighted(params.theta);
  if (name == "order_weight") return order_weight(params.m1, params.m2);
  if (name == "smooth_bump") return smooth_bump(xi());
  throw std::invalid_argument("unknown builtin '" + name + "'");
}

}  // namespace bipdo
