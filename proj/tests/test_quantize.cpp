// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <numbers>

#include "bipdo/quantize.hpp"
#include "bipdo/verify.hpp"
#include "support.hpp"

namespace bipdo {
namespace {

using namespace sym;
using testing::cld;
using testing::max_abs;
using testing::max_abs_diff;
constexpr double kTwoPi = 2 * std::numbers::pi;

// Extended-precision triple sum, independent of the library's transforms and phase tables.
CVec direct_bilinear(const ComplexExpr& sigma, const SampledFunction& f, const SampledFunction& g) {
  const GridSpec& grid = f.grid();
  const int N = grid.n_points;
  const auto fh = testing::direct_spectrum(f.samples());
  const auto gh = testing::direct_spectrum(g.samples());
  const CompiledExpr code(sigma);
  CVec out(N);
  for (int n = 0; n < N; ++n) {
    cld acc = 0;
    for (int j = 0; j < N; ++j)
      for (int l = 0; l < N; ++l) {
        double v[2];
        code.eval(make_point(grid.x(n), grid.xi_at_index(j), grid.xi_at_index(l)), v);
        const long k = grid.mode_of_index(j) + grid.mode_of_index(l);
        const long double ang = 2 * testing::kPiL * static_cast<long double>(((k * n) % N + N) % N) / N;
        acc += cld(v[0], v[1]) * fh[j] * gh[l] * cld(std::cos(ang), std::sin(ang));
      }
    out[n] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  }
  return out;
}

struct Inputs {
  GridSpec grid;
  SampledFunction f, g;
};

Inputs random_inputs(int N, std::uint64_t seed, double period = kTwoPi) {
  const GridSpec grid = make_grid(N, period);
  std::mt19937_64 rng(seed);
  SampledFunction f = random_band_limited(grid, N / 4 - 1, rng);
  SampledFunction g = random_band_limited(grid, N / 4 - 1, rng);
  return {grid, f, g};
}

TEST(ApplyBilinear, ConstantSymbolIsProduct) {
  const Inputs in = random_inputs(32, 1);
  const SampledFunction out = apply_bilinear(sample_symbol(ComplexExpr(Expr(1.0)), in.grid), in.f, in.g);
  for (int n = 0; n < 32; ++n)
    EXPECT_NEAR(std::abs(out.samples()[n] - in.f.samples()[n] * in.g.samples()[n]), 0.0, 1e-13);
}

TEST(ApplyBilinear, ProductOfModes) {
  const GridSpec grid = make_grid(32, kTwoPi);
  const SampledFunction out = apply_bilinear(sample_symbol(ComplexExpr(Expr(1.0)), grid),
                                             sample_function(parse_complex("exp(i*2*x)"), grid),
                                             sample_function(parse_complex("exp(i*3*x)"), grid));
  for (int n = 0; n < 32; ++n) EXPECT_NEAR(std::abs(out.samples()[n] - std::polar(1.0, 5 * grid.x(n))), 0.0, 1e-14);
}

TEST(ApplyBilinear, ImaginaryAlphaDifferentiatesFirstInput) {
  const Inputs in = random_inputs(32, 2);
  const SampledFunction out = apply_bilinear(sample_symbol(parse_complex("0+1i*alpha"), in.grid), in.f, in.g);
  CVec df = in.f.spectrum();
  for (int j = 0; j < 32; ++j) df[j] *= cplx(0, in.grid.xi_at_index(j));
  const CVec dfx = inverse_transform(in.grid, df);
  for (int n = 0; n < 32; ++n) EXPECT_NEAR(std::abs(out.samples()[n] - dfx[n] * in.g.samples()[n]), 0.0, 1e-12);
}

TEST(ApplyBilinear, MatchesExtendedPrecisionOracle) {
  for (const char* src : {"exp(-(alpha^2+beta^2))", "sin(x)*atan(alpha-beta) + i*cos(2*x)/bracket(beta)"}) {
    const ComplexExpr sigma = parse_complex(src);
    const Inputs in = random_inputs(16, 3, 5.0);
    const SymbolGrid sg = sample_symbol(sigma, in.grid);
    const CVec ref = direct_bilinear(sigma, in.f, in.g);
    EXPECT_LE(max_abs_diff(apply_bilinear(sg, in.f, in.g, ApplyPath::Reference).samples(), ref) / max_abs(ref), 1e-12)
        << src;
    if (sg.x_independent())
      EXPECT_LE(max_abs_diff(apply_bilinear(sg, in.f, in.g, ApplyPath::Fast).samples(), ref) / max_abs(ref), 1e-12);
  }
}

TEST(ApplyBilinear, FastPathNeedsXIndependence) {
  const Inputs in = random_inputs(16, 4);
  EXPECT_THROW(apply_bilinear(sample_symbol(parse_complex("sin(x)"), in.grid), in.f, in.g, ApplyPath::Fast),
               std::invalid_argument);
}

TEST(ApplyBilinear, GridMismatch) {
  const Inputs a = random_inputs(16, 5), b = random_inputs(32, 5);
  EXPECT_THROW(apply_bilinear(sample_symbol(ComplexExpr(Expr(1.0)), a.grid), a.f, b.g), std::invalid_argument);
}

TEST(ApplyBilinearProperty, BilinearInBothSlots) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const Inputs in = random_inputs(16, 100 + trial);
    const SymbolGrid sg = random_symbol_grid(in.grid, trial % 4, 200 + trial);
    const SampledFunction h = random_band_limited(in.grid, 3, rng);
    const cplx a(0.5, -1.0), b(2.0, 0.25);
    CVec comb(16);
    for (int n = 0; n < 16; ++n) comb[n] = a * in.g.samples()[n] + b * h.samples()[n];
    const CVec lhs = apply_bilinear(sg, in.f, SampledFunction::from_samples(in.grid, comb)).samples();
    const CVec t1 = apply_bilinear(sg, in.f, in.g).samples(), t2 = apply_bilinear(sg, in.f, h).samples();
    CVec rhs(16);
    for (int n = 0; n < 16; ++n) rhs[n] = a * t1[n] + b * t2[n];
    EXPECT_LE(max_abs_diff(lhs, rhs) / max_abs(rhs), 1e-12);
  }
}

TEST(ApplyBilinearProperty, FastAgreesWithReference) {
  for (int trial = 0; trial < 10; ++trial) {
    const Inputs in = random_inputs(8 << (trial % 3), 300 + trial);
    const SymbolGrid sg = random_symbol_grid(in.grid, 0, 400 + trial);
    const CVec fast = apply_bilinear(sg, in.f, in.g, ApplyPath::Fast).samples();
    const CVec ref = apply_bilinear(sg, in.f, in.g, ApplyPath::Reference).samples();
    EXPECT_LE(max_abs_diff(fast, ref) / max_abs(ref), 1e-12);
  }
}

TEST(ApplyBilinearProperty, Separable) {
  const Inputs in = random_inputs(32, 7);
  const ComplexExpr u = parse_complex("atan(xi)"), v = parse_complex("bracket(xi)^(-1)");
  const SymbolGrid sg = sample_symbol(parse_complex("atan(alpha)*bracket(beta)^(-1)"), in.grid);
  const CVec uf = apply_linear(sample_linear_symbol(u, in.grid), in.f).samples();
  const CVec vg = apply_linear(sample_linear_symbol(v, in.grid), in.g).samples();
  CVec prod(32);
  for (int n = 0; n < 32; ++n) prod[n] = uf[n] * vg[n];
  EXPECT_LE(max_abs_diff(apply_bilinear(sg, in.f, in.g).samples(), prod) / max_abs(prod), 1e-12);
}

TEST(ApplyLinear, Examples) {
  const Inputs in = random_inputs(32, 8);
  EXPECT_LE(max_abs_diff(apply_linear(sample_linear_symbol(ComplexExpr(Expr(1.0)), in.grid), in.f).samples(),
                         in.f.samples()),
            1e-14);
  const CVec d = apply_linear(sample_linear_symbol(parse_complex("i*xi"), in.grid), in.f).samples();
  CVec spec = in.f.spectrum();
  for (int j = 0; j < 32; ++j) spec[j] *= cplx(0, in.grid.xi_at_index(j));
  EXPECT_LE(max_abs_diff(d, inverse_transform(in.grid, spec)), 1e-12);

  const GridSpec g = make_grid(32, kTwoPi);
  const SampledFunction e2 = from_fourier_coeffs(g, {{2, 1.0}});
  const CVec out = apply_linear(sample_linear_symbol(parse_complex("bracket(xi)"), g), e2).samples();
  for (int n = 0; n < 32; ++n) EXPECT_NEAR(std::abs(out[n] - std::sqrt(5.0) * e2.samples()[n]), 0.0, 1e-14);
}

TEST(ApplyLinear, XDependentMatchesDirectSum) {
  const Inputs in = random_inputs(16, 9);
  const ComplexExpr tau = parse_complex("cos(x)*atan(xi) + i*sin(2*x)");
  const CVec out = apply_linear(sample_linear_symbol(tau, in.grid), in.f).samples();
  const auto fh = testing::direct_spectrum(in.f.samples());
  const CompiledExpr code(tau);
  for (int n = 0; n < 16; ++n) {
    cld acc = 0;
    for (int j = 0; j < 16; ++j) {
      Point p{};
      p[static_cast<int>(Var::X)] = in.grid.x(n);
      p[static_cast<int>(Var::Xi)] = in.grid.xi_at_index(j);
      double v[2];
      code.eval(p, v);
      const long double ang = in.grid.x(n) * static_cast<long double>(in.grid.xi_at_index(j));
      acc += cld(v[0], v[1]) * fh[j] * cld(std::cos(ang), std::sin(ang));
    }
    EXPECT_NEAR(std::abs(out[n] - cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()))), 0.0, 1e-13);
  }
}

TEST(ApplyJm, Examples) {
  const Inputs in = random_inputs(32, 10);
  EXPECT_LE(max_abs_diff(apply_Jm(0.0, in.f).samples(), in.f.samples()), 1e-14);
  const GridSpec g = make_grid(32, kTwoPi);
  const SampledFunction e3 = from_fourier_coeffs(g, {{3, 1.0}});
  const CVec out = apply_Jm(2.0, e3).samples();
  for (int n = 0; n < 32; ++n) EXPECT_NEAR(std::abs(out[n] - 10.0 * e3.samples()[n]), 0.0, 1e-13);
  for (double s : {-3.0, -0.5, 1.7})
    EXPECT_LE(max_abs_diff(apply_Jm(-s, apply_Jm(s, in.f)).samples(), in.f.samples()) / max_abs(in.f.samples()),
              1e-12);
}

}  // namespace
}  // namespace bipdo
