// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bipdo/calculus.hpp"
#include "bipdo/conventions.hpp"
#include "bipdo/norms.hpp"
#include "bipdo/quantize.hpp"
#include "bipdo/symbols.hpp"

namespace bipdo {

struct ReportEntry {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  /// Recorded for information only; never fails a report.
  bool observational = false;
  std::string detail;
};

struct Report {
  std::string title;
  std::vector<ReportEntry> entries;

  bool all_pass() const;
  /// Adds a check that passes when measured <= tolerance.
  void check(std::string name, double measured, double tolerance, std::string detail = {});
  void observe(std::string name, double measured, std::string detail = {});
};

/// Reproducible random test functions: trial t uses seed ^ t.
struct Ensemble {
  std::uint64_t seed = 0;
  int count = 10;
  /// Largest retained |k|; -1 selects N/4 - 1 on each grid.
  int bandwidth = -1;
};

int ensemble_bandwidth(const Ensemble& ensemble, const GridSpec& grid);

/// Unit-variance complex Gaussian coefficients on |k| <= bandwidth.
SampledFunction random_band_limited(const GridSpec& grid, int bandwidth, std::mt19937_64& rng);

/// (f, g) for one trial.
std::pair<SampledFunction, SampledFunction> ensemble_pair(const Ensemble& ensemble, const GridSpec& grid, int trial);

/// sigma(x, alpha, beta) with random x-Fourier coefficients on |m| <= x_band and random frequency dependence.
SymbolGrid random_symbol_grid(const GridSpec& grid, int x_band, std::uint64_t seed);

struct TrialRow {
  std::uint64_t seed = 0;
  int n_points = 0;
  int trial = 0;
  double ratio = 0.0;
  bool skipped = false;
};

struct GridSummary {
  int n_points = 0;
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  int skipped = 0;
};

struct RatioReport {
  double p = 0, q = 0, r = 0, s = 0, eps = 0;
  double m1 = 0, m2 = 0;
  std::vector<TrialRow> rows;
  std::vector<GridSummary> grids;
  double growth_factor = 0.0;
};

/// Solves 1/r = 1/p + 1/q and checks 1 < p, q <= inf and r > 2/3.
double target_exponent(double p, double q);

/// One ratio of a study; empty when the denominator is below the skip floor.
std::optional<double> bounded_ratio(const SymbolGrid& sigma, const SampledFunction& f, const SampledFunction& g,
                                    const ClassSpec& spec, double p, double q, double s, double eps);

/// Ratios ||T(f,g)||_{W^{s,r}} / (||f||_{W^{s+eps+(m1)_+,p}} ||g||_{W^{s+eps+(m2)_+,q}}) per trial and grid.
RatioReport boundedness_study(const ComplexExpr& sigma, const ClassSpec& spec, double p, double q, double s,
                              double eps, const Ensemble& ensemble, const std::vector<int>& grid_sizes,
                              double period = conventions::kTwoPi);

/// Runs the identity and property checks of the quantization, norm and calculus layers.
Report identity_suite(const ComplexExpr& sigma, const GridSpec& grid, std::uint64_t seed);

struct ProbeOptions {
  double theta = 1.0471975511965976;  // pi/3
  double p = 4.0;
  double q = 4.0;
  int trials = 20;
  std::uint64_t seed = 7;
  /// Replaces the marcinkiewicz / omega-weighted family.
  std::optional<ComplexExpr> symbol;
};

/// Max ratio per epsilon and grid, and its growth under refinement. Observational only.
Report epsilon_necessity_probe(bool weighted, const std::vector<double>& eps_list, const std::vector<int>& grid_sizes,
                               const ProbeOptions& options = {});

/// Fitted least-squares slope of log(y) against log(x) over the points with y > floor.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double floor);

}  // namespace bipdo
