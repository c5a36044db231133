// SPDX-License-Identifier: Apache-2.0
//
// Acceptance checks: one PASS/FAIL line per criterion.
//
//   bipdo_acceptance [--known-failures 5,6]
//
// Exit status is 0 when exactly the listed criteria fail.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bipdo/calculus.hpp"
#include "bipdo/norms.hpp"
#include "bipdo/tolerances.hpp"
#include "bipdo/verify.hpp"
#include "support.hpp"

namespace {

using namespace bipdo;
using namespace bipdo::sym;
namespace tol = bipdo::tolerances;

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;

struct Outcome {
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;
};

Outcome at_most(double measured, double tolerance, std::string detail = {}) {
  return {measured, tolerance, measured <= tolerance, std::move(detail), {}};
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

cplx pairing(const SampledFunction& u, const SampledFunction& v) {
  cplx acc = 0.0;
  for (std::size_t n = 0; n < u.samples().size(); ++n) acc += u.samples()[n] * v.samples()[n];
  return acc * u.grid().dx();
}

double l2(const SampledFunction& f) { return lebesgue_norm(f, 2.0); }

Outcome adjoint_pairing() {
  const GridSpec g = make_grid(32, kTwoPi);
  const SymbolGrid s = random_symbol_grid(g, 7, 42);
  const SymbolGrid a1 = adjoint_exact(s, 1), a2 = adjoint_exact(s, 2);
  std::mt19937_64 rng(42);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const SampledFunction f = random_band_limited(g, 7, rng);
    const SampledFunction q = random_band_limited(g, 7, rng);
    const SampledFunction h = random_band_limited(g, 7, rng);
    const SampledFunction lhs = apply_bilinear(s, f, q);
    const SampledFunction r1 = apply_bilinear(a1, h, q), r2 = apply_bilinear(a2, f, h);
    const cplx p = pairing(lhs, h);
    worst = std::max(worst, std::abs(p - pairing(r1, f)) / (l2(lhs) * l2(h) + l2(r1) * l2(f)));
    worst = std::max(worst, std::abs(p - pairing(r2, q)) / (l2(lhs) * l2(h) + l2(r2) * l2(q)));
  }
  return at_most(worst, tol::kAdjointPairing, "50 triples, both adjoints, relative");
}

Outcome adjoint_closed_form() {
  const GridSpec g = make_grid(32, kTwoPi);
  const auto gauss = [](double a, double b) { return std::exp(-(a * a + b * b) / 16); };
  const SymbolGrid s = sample_symbol(parse_complex("exp(-(alpha^2+beta^2)/16)"), g);
  const SymbolGrid adj = adjoint_exact(s, 1);
  const auto mask = adjoint_interior(g, 1, 0);
  double worst = 0.0;
  for (int j = 0; j < 32; ++j)
    for (int l = 0; l < 32; ++l)
      if (mask[j * 32 + l]) {
        const double a = g.xi_at_index(j), b = g.xi_at_index(l);
        worst = std::max(worst, std::abs(adj.at(0, j, l) - gauss(-a - b, b)));
      }
  return at_most(worst, tol::kAdjointClosedForm, "gaussian, N=32");
}

Outcome double_adjoint() {
  const GridSpec g = make_grid(32, kTwoPi);
  const SymbolGrid s = random_symbol_grid(g, 7, 42);
  double worst = 0.0;
  for (int which : {1, 2})
    worst = std::max(worst, max_difference(adjoint_exact(adjoint_exact(s, which), which), s) / max_abs(s));
  double angle = 0.0;
  for (double th = -1.5; th <= 1.5; th += 0.01)
    for (int which : {1, 2}) {
      if (std::fabs(th) < 1e-9 || std::fabs(th + kPi / 4) < 1e-3) continue;
      angle = std::max(angle, std::fabs(adjoint_angle(adjoint_angle(th, which), which) - th));
    }
  Outcome o = at_most(worst, tol::kDoubleAdjoint, "angle involution " + fmt("%.3g", angle));
  o.pass = o.pass && angle <= tol::kAngleInvolution;
  return o;
}

Outcome composition_exactness() {
  const GridSpec g = make_grid(32, kTwoPi);
  const SymbolGrid s = random_symbol_grid(g, 7, 42);
  const LinearSymbolGrid t1 = sample_linear_symbol(parse_complex("atan(xi)"), g);
  const LinearSymbolGrid t2 = sample_linear_symbol(parse_complex("bracket(xi)^0.5"), g);
  const SymbolGrid m = compose_right_exact(s, t1, t2);
  double worst = 0.0;
  for (int n = 0; n < 32; ++n)
    for (int j = 0; j < 32; ++j)
      for (int l = 0; l < 32; ++l)
        worst = std::max(worst, std::abs(m.at(n, j, l) - s.at(n, j, l) * t1.at(0, j) * t2.at(0, l)));
  const double product_error = worst / max_abs(s);

  // x-dependent tau2 of degree two in sin(x): one k-term and three j-terms are exact.
  const ComplexExpr sigma = parse_complex("exp(-alpha^2/16)*(1 + beta/8 + beta^2/64)");
  const ComplexExpr tau1 = parse_complex("atan(xi)"), tau2 = parse_complex("(1+sin(x))^2*bracket(xi)");
  const SymbolGrid exact =
      compose_right_exact(sample_symbol(sigma, g), sample_linear_symbol(tau1, g), sample_linear_symbol(tau2, g));
  const SymbolGrid approx = sample_symbol(compose_right_expansion(sigma, tau1, tau2, 1, 3).sum(), g);
  const double expansion_error =
      max_difference(approx, exact, compose_right_interior(g, 0, 2)) / max_abs(exact);
  Outcome o = at_most(product_error, tol::kCompositionExact,
                      "expansion vs exact " + fmt("%.3g", expansion_error) + " (tolerance 1e-9)");
  o.pass = o.pass && expansion_error <= tol::kBilinearExpansionVsExact;
  return o;
}

Outcome left_composition() {
  const GridSpec g = make_grid(32, kTwoPi);
  const ComplexExpr tau = parse_complex("atan(xi)");
  const auto run = [&](const char* text) {
    const ComplexExpr sigma = parse_complex(text);
    const SymbolGrid sg = sample_symbol(sigma, g);
    const SymbolGrid m = compose_left_exact(sample_linear_symbol(tau, g), sg);
    const SymbolGrid ref = sample_symbol(substitute(tau, Var::Xi, alpha() + beta()) * sigma, g);
    return max_difference(m, ref, compose_left_interior(g, x_bandwidth(sg))) / max_abs(ref);
  };
  Outcome o = at_most(run("sin(x)*exp(-(alpha^2+beta^2)/16)"), tol::kCompositionExact, "sigma = sin(x) gaussian");
  o.notes.push_back("x-independent sigma: " + fmt("%.3g", run("exp(-(alpha^2+beta^2)/16)")) +
                    "; the exact symbol of an x-dependent sigma is sum_m s_m(a,b) tau(a+b+m) e^{imx}");
  return o;
}

// Fitted slopes of max_x |R_1| and max_x |R_2| along eta = 0 for the first adjoint.
std::pair<double, double> remainder_slopes(const char* text, int n_points) {
  const GridSpec g = make_grid(n_points, kTwoPi);
  const ComplexExpr sigma = parse_complex(text);
  const SymbolGrid sg = sample_symbol(sigma, g);
  const SymbolGrid exact = adjoint_exact(sg, 1);
  const auto mask = adjoint_interior(g, 1, x_bandwidth(sg));
  const int l0 = n_points / 2;  // eta = 0
  double slopes[2];
  for (int n_terms : {1, 2}) {
    const SymbolGrid approx = sample_symbol(adjoint_expansion(sigma, 1, n_terms).sum(), g);
    std::vector<double> xs, ys;
    for (int j = n_points / 2 + 1; j < n_points; ++j) {
      if (!mask[j * n_points + l0]) continue;
      double r = 0.0;
      for (int n = 0; n < n_points; ++n) r = std::max(r, std::abs(approx.at(n, j, l0) - exact.at(n, j, l0)));
      xs.push_back(g.xi_at_index(j));
      ys.push_back(r);
    }
    slopes[n_terms - 1] = loglog_slope(xs, ys, tol::kRemainderNoiseFloor);
  }
  return {slopes[0], slopes[1]};
}

Outcome remainder_slope() {
  const auto [s1, s2] = remainder_slopes("sin(x)*exp(-alpha^2-beta^2)", 64);
  const double diff = s2 - s1;
  Outcome o{diff, tol::kRemainderSlopeWindow,
            std::isfinite(diff) && std::fabs(diff - tol::kRemainderSlopeTarget) <= tol::kRemainderSlopeWindow,
            "slope difference; R1 " + fmt("%.3g", s1) + ", R2 " + fmt("%.3g", s2) + ", target -1 +- 0.5",
            {}};
  const auto [c1, c2] = remainder_slopes("sin(x)*bracket(alpha)^0.5", 64);
  o.notes.push_back("sigma = sin(x) <alpha>^0.5: R1 " + fmt("%.3g", c1) + ", R2 " + fmt("%.3g", c2) +
                    ", difference " + fmt("%.3g", c2 - c1));
  return o;
}

Outcome sobolev_single_mode() {
  const SampledFunction f = from_fourier_coeffs(make_grid(32, kTwoPi), {{3, 1.0}});
  const double want = 10 * std::sqrt(kTwoPi);
  return at_most(std::fabs(sobolev_norm(f, 2.0, 2.0) - want) / want, tol::kSobolevSingleMode, "relative");
}

Outcome moyal() {
  const GridSpec g = make_grid(64, kTwoPi);
  std::mt19937_64 rng(42);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const SampledFunction f = random_band_limited(g, 31, rng);
    const SampledFunction w = gaussian_window(g, g.period / 8);
    const double expect = l2(w) * l2(f);
    worst = std::max(worst, std::fabs(modulation_norm(f, w, 2.0, 2.0) - expect) / expect);
  }
  return at_most(worst, tol::kMoyal, "10 random functions, relative");
}

Outcome class_discrimination() {
  const GridSpec g = make_grid(64, kTwoPi);
  const ComplexExpr line(theta_line(kPi / 4, atan(xi())));
  const DecayReport theta = check_class(line, make_class_spec(ClassVariant::ClassicalTheta, 0, 0, kPi / 4, 3), g);
  const DecayReport classical = check_class(line, make_class_spec(ClassVariant::Classical, 0, 0, 0, 3), g);
  const DecayEntry& e = classical.entry(0, 1, 0);
  Outcome o;
  o.measured = e.constant;
  o.tolerance = e.ceiling;
  o.pass = theta.pass() && !e.pass && e.constant > e.ceiling;
  o.detail = std::string("theta class ") + (theta.pass() ? "passes" : "fails") +
             "; classical (0,1,0) constant must exceed the ceiling";
  return o;
}

Outcome ratio_stability() {
  const double th = kPi / 3;
  const RatioReport r = boundedness_study(ComplexExpr(theta_line(th, atan(xi()))),
                                          make_class_spec(ClassVariant::Plain, 0, 0, th), 4, 4, 0, 0.1,
                                          Ensemble{7, 100, -1}, {32, 64, 128});
  std::string detail = "max ratio";
  for (const auto& s : r.grids) detail += " N=" + std::to_string(s.n_points) + ":" + fmt("%.4g", s.max_ratio);
  Outcome o = at_most(r.growth_factor, tol::kGrowthFactorLimit, detail);
  o.pass = r.growth_factor < tol::kGrowthFactorLimit;
  return o;
}

Outcome peetre() {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> us(-5.0, 5.0), uu(-100.0, 100.0);
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const double s = us(rng), u = uu(rng), v = uu(rng);
    bad += !peetre_holds(s, u, v);
  }
  return at_most(bad, 0.0, "violations in 10000 samples");
}

double central_difference(const CompiledExpr& c, Point p, Var v, double h) {
  const int i = static_cast<int>(v);
  const double x0 = p[i];
  p[i] = x0 + h;
  const double up = c.eval1(p);
  p[i] = x0 - h;
  return (up - c.eval1(p)) / (2 * h);
}

Outcome parser_round_trip() {
  bipdo::testing::ExprGenerator gen(42, {Var::X, Var::Alpha, Var::Beta});
  double worst = 0.0;
  int text_mismatch = 0;
  for (int i = 0; i < 200; ++i) {
    const Expr e = gen(4);
    const std::string text = to_string(e);
    const Expr back = parse(text);
    text_mismatch += to_string(back) != text;
    const CompiledExpr c0(e), c1(back);
    for (int k = 0; k < 4; ++k) {
      const Point p = gen.point();
      const double v0 = c0.eval1(p);
      worst = std::max(worst, std::fabs(v0 - c1.eval1(p)) / std::max(1.0, std::fabs(v0)));
    }
  }
  double fd_worst = 0.0;
  std::vector<double> ratios;
  for (int i = 0; i < 200; ++i) {
    const Expr e = gen(3);
    const Var v = i % 3 == 0 ? Var::X : i % 3 == 1 ? Var::Alpha : Var::Beta;
    const CompiledExpr c(e), d(differentiate(e, v));
    const Point p = gen.point();
    const double exact = d.eval1(p);
    fd_worst = std::max(fd_worst, std::fabs(central_difference(c, p, v, tol::kFiniteDifferenceStep) - exact) /
                                      std::max(1.0, std::fabs(exact)));
    const double e1 = std::fabs(central_difference(c, p, v, 1e-2) - exact);
    const double e2 = std::fabs(central_difference(c, p, v, 5e-3) - exact);
    if (e1 > 1e-9) ratios.push_back(e1 / e2);
  }
  std::sort(ratios.begin(), ratios.end());
  const double median = ratios.empty() ? 0.0 : ratios[ratios.size() / 2];
  Outcome o = at_most(worst, tol::kParserRoundTrip,
                      "finite differences " + fmt("%.3g", fd_worst) + ", median halving ratio " + fmt("%.3g", median));
  o.pass = o.pass && text_mismatch == 0 && fd_worst <= tol::kFiniteDifference && std::fabs(median - 4.0) <= 0.5;
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::string known_text;
  app.add_option("--known-failures", known_text, "comma-separated criteria expected to fail");
  CLI11_PARSE(app, argc, argv);
  std::set<int> known;
  std::stringstream ss(known_text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) known.insert(std::stoi(item));

  const std::vector<Criterion> criteria = {
      {1, "adjoint_pairing", adjoint_pairing},
      {2, "adjoint_closed_form", adjoint_closed_form},
      {3, "double_adjoint_and_angle_involution", double_adjoint},
      {4, "composition_exactness", composition_exactness},
      {5, "left_composition_single_term", left_composition},
      {6, "remainder_slope", remainder_slope},
      {7, "sobolev_single_mode", sobolev_single_mode},
      {8, "moyal", moyal},
      {9, "class_discrimination", class_discrimination},
      {10, "ratio_stability", ratio_stability},
      {11, "peetre", peetre},
      {12, "parser_round_trip", parser_round_trip},
  };

  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.measured = std::nan("");
      o.detail = std::string("exception: ") + ex.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool expected_fail = known.count(c.id) > 0;
    std::printf("%s %2d %-36s measured=%.6g tolerance=%.6g  %s  (%.1fs)%s\n", o.pass ? "PASS" : "FAIL", c.id,
                c.name, o.measured, o.tolerance, o.detail.c_str(), secs,
                expected_fail ? (o.pass ? "  [listed as known failure]" : "  [known failure]") : "");
    for (const auto& n : o.notes) std::printf("        note: %s\n", n.c_str());
    if (o.pass == expected_fail) ++unexpected;
  }
  std::fflush(stdout);
  return unexpected == 0 ? 0 : 1;
}
