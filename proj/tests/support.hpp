// SPDX-License-Identifier: Apache-2.0
//
// Shared generators and independent oracles for the unit tests.
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "bipdo/lattice.hpp"
#include "bipdo/symlang.hpp"

namespace bipdo::testing {

using cld = std::complex<long double>;

inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;

inline CVec random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CVec v(n);
  for (auto& z : v) {
    const double re = normal(rng);
    z = {re, normal(rng)};
  }
  return v;
}

inline double max_abs_diff(const CVec& a, const CVec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const CVec& a) {
  double m = 0.0;
  for (const auto& z : a) m = std::max(m, std::abs(z));
  return m;
}

/// Direct DFT in extended precision, centered order, spectrum_k = (1/N) sum f_n e^{-2 pi i k n / N}.
inline std::vector<cld> direct_spectrum(const CVec& samples) {
  const int N = static_cast<int>(samples.size());
  std::vector<cld> out(N);
  for (int j = 0; j < N; ++j) {
    const long k = j - N / 2;
    cld acc = 0;
    for (int n = 0; n < N; ++n) {
      const long r = ((k * n) % N + N) % N;
      const long double ang = -2 * kPiL * r / N;
      acc += cld(samples[n].real(), samples[n].imag()) * cld(std::cos(ang), std::sin(ang));
    }
    out[j] = acc / static_cast<long double>(N);
  }
  return out;
}

/// Random expression over the given variables; every subterm stays finite for arguments in [-3, 3].
class ExprGenerator {
 public:
  ExprGenerator(std::uint64_t seed, std::vector<sym::Var> vars) : rng_(seed), vars_(std::move(vars)) {}

  sym::Expr operator()(int depth) {
    using namespace sym;
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 12);
    switch (pick(rng_)) {
      case 0: return Expr(constant());
      case 1: return Expr::variable(vars_[std::uniform_int_distribution<std::size_t>(0, vars_.size() - 1)(rng_)]);
      case 2: return (*this)(depth - 1) + (*this)(depth - 1);
      case 3: return (*this)(depth - 1) - (*this)(depth - 1);
      case 4: return (*this)(depth - 1) * (*this)(depth - 1);
      case 5: return (*this)(depth - 1) / bracket((*this)(depth - 1));
      case 6: return sin((*this)(depth - 1));
      case 7: return cos((*this)(depth - 1));
      case 8: return atan((*this)(depth - 1));
      case 9: return exp(sin((*this)(depth - 1)));
      case 10: return log(Expr(2.0) + cos((*this)(depth - 1)));
      case 11: return pow(bracket((*this)(depth - 1)), std::uniform_int_distribution<int>(-3, 3)(rng_) * 0.5);
      default: return -(*this)(depth - 1);
    }
  }

  sym::Point point() {
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    sym::Point p{};
    for (auto& v : p) v = u(rng_);
    return p;
  }

 private:
  double constant() {
    // Mix of short decimals and full-precision values.
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    if (std::bernoulli_distribution(0.5)(rng_)) return std::round(u(rng_) * 8.0) / 8.0;
    return u(rng_);
  }

  std::mt19937_64 rng_;
  std::vector<sym::Var> vars_;
};

}  // namespace bipdo::testing
