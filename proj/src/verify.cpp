// SPDX-License-Identifier: Apache-2.0
#include "bipdo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "bipdo/parallel.hpp"
#include "bipdo/tolerances.hpp"

namespace bipdo {

namespace tol = tolerances;
using namespace sym;

// --- reports ---------------------------------------------------------------

bool Report::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const ReportEntry& e) { return e.pass || e.observational; });
}

void Report::check(std::string name, double measured, double tolerance, std::string detail) {
  entries.push_back({std::move(name), measured, tolerance, std::isfinite(measured) && measured <= tolerance, false,
                     std::move(detail)});
}

void Report::observe(std::string name, double measured, std::string detail) {
  entries.push_back({std::move(name), measured, std::nan(""), true, true, std::move(detail)});
}

// --- ensembles -------------------------------------------------------------

int ensemble_bandwidth(const Ensemble& ensemble, const GridSpec& grid) {
  const int limit = grid.n_points / 4;
  const int b = ensemble.bandwidth < 0 ? limit - 1 : ensemble.bandwidth;
  if (b < 0 || b >= limit)
    throw std::invalid_argument("ensemble bandwidth must satisfy 0 <= B < n_points/4");
  return b;
}

SampledFunction random_band_limited(const GridSpec& grid, int bandwidth, std::mt19937_64& rng) {
  if (bandwidth < 0 || bandwidth >= grid.n_points / 2) throw std::invalid_argument("bandwidth must be below n_points/2");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CVec spectrum(grid.n_points, cplx(0.0));
  for (int k = -bandwidth; k <= bandwidth; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    spectrum[grid.index_of_mode(k)] = {re, im};
  }
  return SampledFunction::from_spectrum(grid, std::move(spectrum));
}

std::pair<SampledFunction, SampledFunction> ensemble_pair(const Ensemble& ensemble, const GridSpec& grid, int trial) {
  const int b = ensemble_bandwidth(ensemble, grid);
  std::mt19937_64 rng(ensemble.seed ^ static_cast<std::uint64_t>(trial));
  SampledFunction f = random_band_limited(grid, b, rng);
  SampledFunction g = random_band_limited(grid, b, rng);
  return {std::move(f), std::move(g)};
}

SymbolGrid random_symbol_grid(const GridSpec& grid, int x_band, std::uint64_t seed) {
  const int N = grid.n_points;
  if (x_band < 0 || 2 * x_band >= N) throw std::invalid_argument("x bandwidth must be below n_points/2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const std::size_t NN = static_cast<std::size_t>(N) * N;
  std::vector<CVec> coeffs(2 * x_band + 1, CVec(NN));
  for (auto& c : coeffs)
    for (auto& v : c) {
      const double re = normal(rng);
      v = {re, normal(rng)};
    }
  SymbolGrid out = make_symbol_grid(grid, x_band == 0 ? 1 : N);
  for (int n = 0; n < out.x_extent; ++n) {
    for (int m = -x_band; m <= x_band; ++m) {
      const cplx phase = lattice_phase(grid, n, m);
      const CVec& c = coeffs[m + x_band];
      for (std::size_t q = 0; q < NN; ++q) out.tensor[n * NN + q] += c[q] * phase;
    }
  }
  return out;
}

// --- boundedness studies ---------------------------------------------------

double target_exponent(double p, double q) {
  if (!(p > 1.0) || !(q > 1.0)) throw std::invalid_argument("exponents must satisfy 1 < p, q <= infinity");
  const double inv = (std::isinf(p) ? 0.0 : 1.0 / p) + (std::isinf(q) ? 0.0 : 1.0 / q);
  if (inv == 0.0) return kInfinity;
  const double r = 1.0 / inv;
  if (!(r > 2.0 / 3.0)) throw std::invalid_argument("exponent relation 1/r = 1/p + 1/q requires r > 2/3");
  return r;
}

std::optional<double> bounded_ratio(const SymbolGrid& sigma, const SampledFunction& f, const SampledFunction& g,
                                    const ClassSpec& spec, double p, double q, double s, double eps) {
  const double r = target_exponent(p, q);
  const double den = sobolev_norm(f, s + eps + spec.m1_plus(), p) * sobolev_norm(g, s + eps + spec.m2_plus(), q);
  if (!(den >= tol::kDenominatorFloor)) return std::nullopt;
  return sobolev_norm(apply_bilinear(sigma, f, g), s, r) / den;
}

namespace {

RatioReport run_study(const ComplexExpr& sigma, const ClassSpec& spec, double p, double q, double s, double eps,
                      const Ensemble& ensemble, const std::vector<int>& grid_sizes, double period,
                      bool allow_zero_eps) {
  RatioReport rep;
  rep.p = p;
  rep.q = q;
  rep.r = target_exponent(p, q);
  rep.s = s;
  rep.eps = eps;
  rep.m1 = spec.m1;
  rep.m2 = spec.m2;
  if (!(s >= 0.0)) throw std::invalid_argument("s must be non-negative");
  if (!(eps > 0.0) && !(allow_zero_eps && eps == 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (grid_sizes.empty()) throw std::invalid_argument("at least one grid size is required");
  if (ensemble.count <= 0) throw std::invalid_argument("ensemble count must be positive");

  for (int n_points : grid_sizes) {
    const GridSpec grid = make_grid(n_points, period);
    const SymbolGrid sg_grid = sample_symbol(sigma, grid);
    std::vector<TrialRow> rows(ensemble.count);
    parallel_for(0, static_cast<std::size_t>(ensemble.count), [&](std::size_t t) {
      const auto [f, g] = ensemble_pair(ensemble, grid, static_cast<int>(t));
      TrialRow row;
      row.seed = ensemble.seed ^ static_cast<std::uint64_t>(t);
      row.n_points = n_points;
      row.trial = static_cast<int>(t);
      const std::optional<double> ratio = bounded_ratio(sg_grid, f, g, spec, p, q, s, eps);
      row.skipped = !ratio;
      row.ratio = ratio.value_or(0.0);
      rows[t] = row;
    });
    GridSummary summary;
    summary.n_points = n_points;
    std::vector<double> kept;
    for (const auto& row : rows) {
      if (row.skipped) {
        ++summary.skipped;
        continue;
      }
      kept.push_back(row.ratio);
      summary.max_ratio = std::max(summary.max_ratio, row.ratio);
    }
    if (!kept.empty()) {
      std::sort(kept.begin(), kept.end());
      const std::size_t h = kept.size() / 2;
      summary.median_ratio = kept.size() % 2 ? kept[h] : 0.5 * (kept[h - 1] + kept[h]);
    }
    rep.grids.push_back(summary);
    rep.rows.insert(rep.rows.end(), rows.begin(), rows.end());
  }
  const double first = rep.grids.front().max_ratio;
  const double last = rep.grids.back().max_ratio;
  rep.growth_factor = first > 0.0 ? last / first : (last > 0.0 ? kInfinity : 1.0);
  return rep;
}

}  // namespace

RatioReport boundedness_study(const ComplexExpr& sigma, const ClassSpec& spec, double p, double q, double s,
                              double eps, const Ensemble& ensemble, const std::vector<int>& grid_sizes,
                              double period) {
  return run_study(sigma, spec, p, q, s, eps, ensemble, grid_sizes, period, false);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double floor) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > floor)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::nan("");
  const double d = n * sxx - sx * sx;
  if (d == 0.0) return std::nan("");
  return (n * sxy - sx * sy) / d;
}

// --- identity suite --------------------------------------------------------

namespace {

cplx pairing(const SampledFunction& u, const SampledFunction& v) {
  cplx acc = 0.0;
  for (std::size_t n = 0; n < u.samples().size(); ++n) acc += u.samples()[n] * v.samples()[n];
  return acc * u.grid().dx();
}

double l2(const SampledFunction& u) { return lebesgue_norm(u, 2.0); }

double max_abs(const CVec& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

double rel_diff(const CVec& a, const CVec& b) {
  double num = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) num = std::max(num, std::abs(a[i] - b[i]));
  const double den = std::max(max_abs(a), max_abs(b));
  return den > 0.0 ? num / den : num;
}

CVec add(const CVec& a, const CVec& b, cplx ca = 1.0, cplx cb = 1.0) {
  CVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ca * a[i] + cb * b[i];
  return out;
}

SampledFunction derivative(const SampledFunction& f) {
  CVec spec = f.spectrum();
  for (int j = 0; j < f.grid().n_points; ++j) spec[j] *= cplx(0.0, f.grid().xi_at_index(j));
  return SampledFunction::from_spectrum(f.grid(), std::move(spec));
}

std::string fmt(const char* format, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

// Error of an expansion against an exact grid symbol on a mask, relative to the exact symbol's size.
double expansion_error(const ExpansionSeries& series, const SymbolGrid& exact, const std::vector<bool>& mask) {
  const SymbolGrid approx = sample_symbol(series.sum(), exact.grid);
  const double scale = std::max(1.0, max_abs(exact));
  return max_difference(approx, exact, mask) / scale;
}

}  // namespace

Report identity_suite(const ComplexExpr& sigma, const GridSpec& grid, std::uint64_t seed) {
  Report rep;
  rep.title = "identities";
  const int N = grid.n_points;
  const int band = N / 4 - 1;
  std::mt19937_64 rng(seed);
  auto rand_fn = [&] { return random_band_limited(grid, band, rng); };

  // Lattice.
  {
    std::normal_distribution<double> normal;
    CVec v(N);
    for (auto& z : v) {
      const double re = normal(rng);
      z = {re, normal(rng)};
    }
    const CVec back = inverse_transform(grid, transform(grid, v));
    rep.check("dft_round_trip", rel_diff(back, v), tol::kRoundTrip);
    const CVec spec = transform(grid, v);
    double lhs = 0.0, rhs = 0.0;
    for (const auto& z : v) lhs += std::norm(z) * grid.dx();
    for (const auto& z : spec) rhs += std::norm(z);
    rhs *= conventions::parseval_constant(grid.period);
    rep.check("parseval", std::fabs(lhs - rhs) / lhs, tol::kParseval);
  }

  const SymbolGrid sg = sample_symbol(sigma, grid);
  const SampledFunction f = rand_fn(), f2 = rand_fn(), g = rand_fn(), h = rand_fn();

  // Quantization.
  {
    const cplx a(0.7, -0.2), b(-1.3, 0.4);
    const SampledFunction comb = SampledFunction::from_samples(grid, add(f.samples(), f2.samples(), a, b));
    const CVec lhs = apply_bilinear(sg, comb, g).samples();
    const CVec rhs = add(apply_bilinear(sg, f, g).samples(), apply_bilinear(sg, f2, g).samples(), a, b);
    rep.check("bilinearity", rel_diff(lhs, rhs), tol::kBilinearity);

    const SymbolGrid xfree = sg.x_independent() ? sg : sample_symbol(ComplexExpr(coifman_meyer_gauss()), grid);
    const CVec fast = apply_bilinear(xfree, f, g, ApplyPath::Fast).samples();
    const CVec ref = apply_bilinear(xfree, f, g, ApplyPath::Reference).samples();
    rep.check("fast_path_vs_reference", rel_diff(fast, ref), tol::kFastVsReference,
              sg.x_independent() ? "input symbol" : "gaussian symbol (input symbol depends on x)");

    const Expr u = atan(xi()), v = pow(bracket(xi()), -1.0);
    const SymbolGrid sep = sample_symbol(ComplexExpr(marcinkiewicz_product(u, v)), grid);
    const SampledFunction uf = apply_linear(sample_linear_symbol(ComplexExpr(u), grid), f);
    const SampledFunction vg = apply_linear(sample_linear_symbol(ComplexExpr(v), grid), g);
    CVec prod(N);
    for (int n = 0; n < N; ++n) prod[n] = uf.samples()[n] * vg.samples()[n];
    rep.check("separability", rel_diff(apply_bilinear(sep, f, g, ApplyPath::Reference).samples(), prod),
              tol::kSeparability);

    const SymbolGrid one = sample_symbol(ComplexExpr(Expr(1.0)), grid);
    const CVec dl = derivative(apply_bilinear(one, f, g)).samples();
    const CVec dr = add(apply_bilinear(one, derivative(f), g).samples(), apply_bilinear(one, f, derivative(g)).samples());
    rep.check("leibniz", rel_diff(dl, dr), tol::kLeibniz);
  }

  // Adjoints of the input symbol.
  for (int which : {1, 2}) {
    const SymbolGrid adj = adjoint_exact(sg, which);
    double worst = 0.0;
    std::mt19937_64 prng(seed + static_cast<std::uint64_t>(which));
    for (int t = 0; t < 20; ++t) {
      const SampledFunction a = random_band_limited(grid, band, prng);
      const SampledFunction b = random_band_limited(grid, band, prng);
      const SampledFunction c = random_band_limited(grid, band, prng);
      const SampledFunction lhs_op = apply_bilinear(sg, a, b);
      const SampledFunction rhs_op = which == 1 ? apply_bilinear(adj, c, b) : apply_bilinear(adj, a, c);
      const cplx lhs = pairing(lhs_op, c);
      const cplx rhs = pairing(rhs_op, which == 1 ? a : b);
      const double scale = l2(lhs_op) * l2(c) + l2(rhs_op) * l2(which == 1 ? a : b);
      worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    const std::string w = std::to_string(which);
    rep.check("adjoint_pairing_" + w, worst, tol::kAdjointPairing);
    const SymbolGrid twice = adjoint_exact(adj, which);
    rep.check("double_adjoint_" + w, max_difference(twice, sg) / std::max(1.0, max_abs(sg)), tol::kDoubleAdjoint);
  }

  // Expansions that terminate: frequency-polynomial slots with trigonometric x-dependence.
  {
    // One period of the grid, so the x-dependence stays a trigonometric polynomial of degree 1 or 2.
    const Expr wx = Expr(conventions::kTwoPi / grid.period) * x();
    const Expr poly_a = Expr(1.0) + alpha() / Expr(8.0) + pow(alpha(), 2.0) / Expr(64.0);
    const Expr poly_b = Expr(1.0) + beta() / Expr(8.0) + pow(beta(), 2.0) / Expr(64.0);
    const Expr poly_xi = Expr(1.0) + xi() / Expr(8.0) + pow(xi(), 2.0) / Expr(64.0);

    const ComplexExpr sa(sin(wx) * poly_a * exp(-pow(beta(), 2.0) / Expr(32.0)));
    const SymbolGrid sa_grid = sample_symbol(sa, grid);
    rep.check("adjoint_expansion_exact",
              expansion_error(adjoint_expansion(sa, 1, 3), adjoint_exact(sa_grid, 1), adjoint_interior(grid, 1, 1)),
              tol::kBilinearExpansionVsExact);

    const ComplexExpr sc(exp(-pow(alpha(), 2.0) / Expr(64.0)) * poly_b);
    const ComplexExpr t1(bracket(xi()));
    const ComplexExpr t2(cos(Expr(2.0) * wx) * atan(xi()));
    const SymbolGrid exact_r = compose_right_exact(sample_symbol(sc, grid), sample_linear_symbol(t1, grid),
                                                   sample_linear_symbol(t2, grid));
    rep.check("compose_right_expansion_exact",
              expansion_error(compose_right_expansion(sc, t1, t2, 1, 3), exact_r, compose_right_interior(grid, 0, 2)),
              tol::kBilinearExpansionVsExact);

    const ComplexExpr tl(poly_xi);
    const ComplexExpr sl(sin(wx) * exp(-(pow(alpha(), 2.0) + pow(beta(), 2.0)) / Expr(32.0)));
    const SymbolGrid exact_l = compose_left_exact(sample_linear_symbol(tl, grid), sample_symbol(sl, grid));
    rep.check("compose_left_expansion_exact",
              expansion_error(compose_left_expansion(tl, sl, 3), exact_l, compose_left_interior(grid, 1)),
              tol::kBilinearExpansionVsExact);

    const ComplexExpr lt(cos(wx) * poly_xi);
    const LinearSymbolGrid lt_adj = linear_adjoint_exact(sample_linear_symbol(lt, grid));
    const LinearSymbolGrid lt_exp = sample_linear_symbol(linear_adjoint_expansion(lt, 3).sum(), grid);
    rep.check("linear_adjoint_expansion_exact", max_difference(lt_adj, lt_exp, linear_interior(grid, 1)) / 3.0,
              tol::kLinearExpansionVsExact);

    const ComplexExpr lc1(sin(wx) * poly_xi), lc2(cos(Expr(2.0) * wx) * atan(xi()));
    const LinearSymbolGrid lc_exact =
        linear_compose_exact(sample_linear_symbol(lc1, grid), sample_linear_symbol(lc2, grid));
    const LinearSymbolGrid lc_exp = sample_linear_symbol(linear_compose_expansion(lc1, lc2, 3).sum(), grid);
    rep.check("linear_compose_expansion_exact", max_difference(lc_exact, lc_exp, linear_interior(grid, 3)) / 3.0,
              tol::kLinearExpansionVsExact);
  }

  // Angles, duality classes and the exact adjoint of a theta-line symbol.
  {
    double worst = 0.0;
    for (double th : {std::numbers::pi / 6, std::numbers::pi / 4, std::numbers::pi / 3, -std::numbers::pi / 3, 1.2, -0.3})
      for (int which : {1, 2}) worst = std::max(worst, std::fabs(adjoint_angle(adjoint_angle(th, which), which) - th));
    rep.check("angle_involution", worst, tol::kAngleInvolution);

    const double th = std::numbers::pi / 3;
    const ClassSpec spec = make_class_spec(ClassVariant::Plain, 0.0, 0.0, th, 2);
    const ComplexExpr line(theta_line(th, atan(xi())));
    const SymbolGrid line_grid = sample_symbol(line, grid);
    for (int which : {1, 2}) {
      const ExpansionSeries closed = adjoint_expansion(line, which, 1);
      const double err = expansion_error(closed, adjoint_exact(line_grid, which), adjoint_interior(grid, which, 0));
      const ClassSpec dual = duality_class_map(spec, which);
      const DecayReport dr = check_class(closed.sum(), dual, grid);
      double worst_ratio = 0.0;
      for (const auto& e : dr.orders) worst_ratio = std::max(worst_ratio, e.ceiling > 0 ? e.constant / e.ceiling : 0.0);
      const std::string w = std::to_string(which);
      rep.check("adjoint_closed_form_" + w, err, tol::kAdjointClosedForm);
      rep.check("adjoint_dual_class_" + w, worst_ratio, 1.0,
                std::string(variant_name(dual.variant)) + fmt(" at theta=%.17g", dual.theta));
    }
  }

  // Principal-symbol conjugation.
  {
    const Expr kappa = bracket(xi());
    const ComplexExpr one(Expr(1.0));
    const SymbolGrid exact =
        principal_conjugation_exact(sample_symbol(one, grid), sample_linear_symbol(ComplexExpr(kappa), grid));
    const SymbolGrid formula = sample_symbol(principal_conjugation(one, kappa, &grid), grid);
    rep.check("principal_conjugation", max_difference(exact, formula, compose_left_interior(grid, 0)),
              tol::kPrincipalConjugation);
  }

  // Norms.
  {
    std::vector<double> values;
    for (double s : {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0}) values.push_back(sobolev_norm(f, s, 2.0));
    int violations = 0;
    for (std::size_t i = 1; i < values.size(); ++i) violations += values[i] < values[i - 1];
    rep.check("sobolev_monotone_in_s", violations, 0.0);

    const SampledFunction window = gaussian_window(grid, grid.period / 8);
    const double moyal = modulation_norm(f, window, 2.0, 2.0);
    const double expect = l2(window) * l2(f);
    rep.check("moyal", std::fabs(moyal - expect) / expect, tol::kMoyal);

    const SampledFunction e2 = from_fourier_coeffs(grid, {{2, 1.0}});
    const SampledFunction e5 = from_fourier_coeffs(grid, {{5, 1.0}});
    const double n2 = modulation_norm(e2, window, 1.0, 3.0), n5 = modulation_norm(e5, window, 1.0, 3.0);
    rep.check("modulation_shift_covariance", std::fabs(n2 - n5) / n2, tol::kModulationShift);

    std::mt19937_64 prng(seed);
    std::uniform_real_distribution<double> us(-5.0, 5.0), uu(-100.0, 100.0);
    int bad = 0;
    for (int t = 0; t < 10000; ++t) {
      const double s = us(prng), a = uu(prng), b = uu(prng);
      bad += !peetre_holds(s, a, b);
    }
    rep.check("peetre", bad, 0.0, "10000 samples");

    // Hoelder-type product estimate: the measured constant must not grow between N and 2N.
    double worst = 0.0;
    std::string detail;
    for (double m : {-1.0, 0.0, 1.0}) {
      double c[2] = {0.0, 0.0};
      for (int level = 0; level < 2; ++level) {
        const GridSpec gr = make_grid(N << level, grid.period);
        const Ensemble ens{seed, 20, -1};
        for (int t = 0; t < ens.count; ++t) {
          const auto [a, b] = ensemble_pair(ens, gr, t);
          CVec prod(gr.n_points);
          for (int n = 0; n < gr.n_points; ++n) prod[n] = a.samples()[n] * b.samples()[n];
          const SampledFunction ab = SampledFunction::from_samples(gr, std::move(prod));
          const double mp = ClassSpec::positive_part(m);
          c[level] = std::max(c[level], sobolev_norm(ab, m, 2.0) / (sobolev_norm(a, mp, 4.0) * sobolev_norm(b, mp, 4.0)));
        }
      }
      const double factor = c[1] / c[0];
      worst = std::max(worst, factor);
      detail += fmt("m=%g: ", m) + fmt("%.6g -> ", c[0]) + fmt("%.6g; ", c[1]);
    }
    rep.check("holder_stability", worst, tol::kHolderStabilityFactor, detail);
  }
  return rep;
}

// --- epsilon probe ---------------------------------------------------------

Report epsilon_necessity_probe(bool weighted, const std::vector<double>& eps_list, const std::vector<int>& grid_sizes,
                               const ProbeOptions& options) {
  Report rep;
  rep.title = weighted ? "epsilon_probe_weighted" : "epsilon_probe_unweighted";
  const ComplexExpr sigma = options.symbol ? *options.symbol
                            : weighted     ? ComplexExpr(omega_weighted(options.theta))
                                           : ComplexExpr(marcinkiewicz_product(atan(xi()), atan(xi())));
  const ClassSpec spec = make_class_spec(ClassVariant::Plain, 0.0, 0.0, options.theta);
  const Ensemble ens{options.seed, options.trials, -1};
  for (double eps : eps_list) {
    if (eps < 0.0) throw std::invalid_argument("epsilon must be non-negative");
    const RatioReport r = run_study(sigma, spec, options.p, options.q, 0.0, eps, ens, grid_sizes,
                                    conventions::kTwoPi, true);
    std::string detail;
    for (const auto& g : r.grids) detail += "N=" + std::to_string(g.n_points) + fmt(": %.17g; ", g.max_ratio);
    rep.observe(fmt("growth_factor_eps_%g", eps), r.growth_factor, detail);
  }
  return rep;
}

}  // namespace bipdo
