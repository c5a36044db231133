// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <numbers>

#include "bipdo/conventions.hpp"
#include "bipdo/norms.hpp"
#include "bipdo/quantize.hpp"
#include "bipdo/verify.hpp"
#include "support.hpp"

namespace bipdo {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

SampledFunction random_fn(const GridSpec& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_band_limited(g, g.n_points / 4 - 1, rng);
}

TEST(Lebesgue, Examples) {
  const GridSpec g = make_grid(32, kTwoPi);
  const SampledFunction one = from_fourier_coeffs(g, {{0, 1.0}});
  EXPECT_NEAR(lebesgue_norm(one, 2.0), std::sqrt(kTwoPi), 1e-14);
  const SampledFunction zero = SampledFunction::from_samples(g, CVec(32, 0.0));
  for (double p : {0.5, 1.0, 2.0, kInfinity}) EXPECT_EQ(lebesgue_norm(zero, p), 0.0);
  EXPECT_THROW(lebesgue_norm(one, 0.0), std::invalid_argument);
  EXPECT_THROW(lebesgue_norm(one, -1.0), std::invalid_argument);
}

TEST(Lebesgue, ParsevalFromSpectrum) {
  const GridSpec g = make_grid(64, 3.0);
  const SampledFunction f = random_fn(g, 1);
  double s = 0;
  for (const auto& z : f.spectrum()) s += std::norm(z);
  EXPECT_NEAR(lebesgue_norm(f, 2.0), std::sqrt(s * conventions::parseval_constant(3.0)), 1e-12 * std::sqrt(s));
}

TEST(Lebesgue, InfinityIsMax) {
  const GridSpec g = make_grid(16, kTwoPi);
  const SampledFunction f = random_fn(g, 2);
  EXPECT_EQ(lebesgue_norm(f, kInfinity), testing::max_abs(f.samples()));
}

TEST(Sobolev, Examples) {
  const GridSpec g = make_grid(32, kTwoPi);
  const SampledFunction e3 = from_fourier_coeffs(g, {{3, 1.0}});
  EXPECT_NEAR(sobolev_norm(e3, 2.0, 2.0), 10 * std::sqrt(kTwoPi), 1e-12);
  const SampledFunction f = random_fn(g, 3);
  for (double p : {1.0, 2.0, 4.0}) EXPECT_DOUBLE_EQ(sobolev_norm(f, 0.0, p), lebesgue_norm(f, p));
  double s = 0;
  for (int j = 0; j < 32; ++j) s += (1 + std::pow(g.xi_at_index(j), 2)) * std::norm(f.spectrum()[j]);
  EXPECT_NEAR(sobolev_norm(f, 1.0, 2.0), std::sqrt(s * kTwoPi), 1e-12 * std::sqrt(s));
}

TEST(SobolevProperty, MonotoneInS) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GridSpec g = make_grid(32, 1.0 + seed);
    const SampledFunction f = random_fn(g, seed);
    double prev = 0.0;
    for (double s = -3.0; s <= 3.0; s += 0.25) {
      const double v = sobolev_norm(f, s, 2.0);
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(Stft, ZeroFunction) {
  const GridSpec g = make_grid(16, kTwoPi);
  const SampledFunction zero = SampledFunction::from_samples(g, CVec(16, 0.0));
  const StftGrid s = stft(zero, gaussian_window(g, 1.0));
  for (const auto& z : s.values) EXPECT_EQ(z, cplx(0.0));
  EXPECT_EQ(modulation_norm(zero, gaussian_window(g, 1.0), 2.0, 2.0), 0.0);
  EXPECT_THROW(modulation_norm(zero, SampledFunction::from_samples(g, CVec(16, 0.0)), 2.0, 2.0),
               std::invalid_argument);
}

TEST(Stft, MatchesDirectSum) {
  // V(x_n, xi_k) = sum_m e^{-i xi_k t_m} f(t_m) phi(t_m - x_n) dt, with circular shifts.
  const GridSpec g = make_grid(16, 4.0);
  const SampledFunction f = random_fn(g, 4);
  const SampledFunction w = gaussian_window(g, 0.5);
  const StftGrid s = stft(f, w);
  const int N = 16;
  for (int k = 0; k < N; ++k)
    for (int n = 0; n < N; ++n) {
      cplx acc = 0;
      for (int m = 0; m < N; ++m)
        acc += lattice_phase(g, m, -g.mode_of_index(k)) * f.samples()[m] * w.samples()[((m - n) % N + N) % N];
      EXPECT_NEAR(std::abs(s.values[static_cast<std::size_t>(k) * N + n] - acc * g.dx()), 0.0, 1e-13);
    }
}

TEST(Modulation, MoyalIdentity) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const GridSpec g = make_grid(32 << (seed % 2), 2.0 + seed);
    const SampledFunction f = random_fn(g, seed);
    const SampledFunction w = gaussian_window(g, g.period / 10);
    const double lhs = modulation_norm(f, w, 2.0, 2.0);
    const double rhs = lebesgue_norm(w, 2.0) * lebesgue_norm(f, 2.0);
    EXPECT_NEAR(lhs, rhs, 1e-10 * rhs);
  }
}

TEST(Modulation, ShiftCovariantSingleModes) {
  const GridSpec g = make_grid(32, kTwoPi);
  const SampledFunction w = gaussian_window(g, 0.7);
  for (double p : {1.0, 2.0, kInfinity})
    for (double t : {1.0, 3.0}) {
      const double ref = modulation_norm(from_fourier_coeffs(g, {{0, 1.0}}), w, p, t);
      for (int k : {-7, 3, 11})
        EXPECT_NEAR(modulation_norm(from_fourier_coeffs(g, {{k, 1.0}}), w, p, t), ref, 1e-10 * ref);
    }
}

TEST(Peetre, Examples) {
  EXPECT_TRUE(peetre_holds(0.0, 5.0, -5.0));
  EXPECT_TRUE(peetre_holds(2.0, 10.0, 0.0));
  EXPECT_TRUE(peetre_holds(-3.0, 0.0, 50.0));
}

TEST(PeetreProperty, RandomTriples) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> us(-5.0, 5.0), uu(-100.0, 100.0);
  for (int i = 0; i < 10000; ++i) {
    const double s = us(rng), u = uu(rng), v = uu(rng);
    ASSERT_TRUE(peetre_holds(s, u, v)) << s << " " << u << " " << v;
  }
}

}  // namespace
}  // namespace bipdo
