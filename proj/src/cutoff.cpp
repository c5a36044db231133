// SPDX-License-Identifier: Apache-2.0
//
// Smooth bump Phi(u) = psi(2-|u|) / (psi(2-|u|) + psi(|u|-1)), psi(t) = exp(-1/t) for t > 0.
// Derivatives come from truncated Taylor-series arithmetic at the evaluation point.
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bipdo/symlang.hpp"

namespace bipdo::sym {
namespace {

using Series = std::vector<double>;

// Taylor coefficients of psi(t0 + t1*h) in h.
Series psi_series(double t0, double t1, int order) {
  Series out(order + 1, 0.0);
  if (t0 <= 0.0) return out;
  Series a(order + 1);
  double c = -1.0 / t0;
  for (int n = 0; n <= order; ++n) {
    a[n] = c;
    c *= -t1 / t0;
  }
  out[0] = std::exp(a[0]);
  for (int n = 1; n <= order; ++n) {
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) acc += k * a[k] * out[n - k];
    out[n] = acc / n;
  }
  return out;
}

}  // namespace

double cutoff_value(double u, int order) {
  if (order < 0) throw std::invalid_argument("cutoff derivative order must be non-negative");
  const double s = std::fabs(u);
  if (s <= 1.0) return order == 0 ? 1.0 : 0.0;
  if (s >= 2.0) return 0.0;
  const Series A = psi_series(2.0 - s, -1.0, order);
  const Series B = psi_series(s - 1.0, 1.0, order);
  Series D(order + 1), q(order + 1);
  for (int n = 0; n <= order; ++n) D[n] = A[n] + B[n];
  for (int n = 0; n <= order; ++n) {
    double acc = A[n];
    for (int k = 1; k <= n; ++k) acc -= D[k] * q[n - k];
    q[n] = acc / D[0];
  }
  double value = q[order];
  for (int k = 2; k <= order; ++k) value *= k;
  if (u < 0 && (order % 2 == 1)) value = -value;
  return value;
}

}  // namespace bipdo::sym
