// SPDX-License-Identifier: Apache-2.0
#include "bipdo/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "bipdo/calculus.hpp"
#include "bipdo/report_io.hpp"
#include "bipdo/tolerances.hpp"
#include "bipdo/verify.hpp"

namespace bipdo::cli {

namespace {

using nlohmann::json;
using sym::ComplexExpr;

struct Common {
  int n_points = 32;
  double period = conventions::kTwoPi;
  std::uint64_t seed = 42;
  std::string format = "json";
  std::string output;
};

struct SymbolInput {
  std::string symbol;
  std::string builtin;
  double theta = 0.0;
  std::string profile;
  double m1 = 0.0;
  double m2 = 0.0;
};

struct ClassInput {
  std::string variant = "plain";
  double rho = 1.0;
  double delta = 0.0;
  int order = 2;
};

struct Options {
  Common common;
  SymbolInput sym;
  ClassInput cls;
  std::string f, g, tau, tau1, tau2, kappa, side = "right", kind = "linear-adjoint", suite = "identities";
  std::string amnorm_expr;
  double ceiling = 0.0;
  int which = 1, terms = 2, p_terms = 1, trials = 100, bandwidth = -1, j_max = 2, l_max = 2;
  double p = 4.0, q = 4.0, s = 0.0, eps = 0.1, t = 2.0, window = 0.0, m = 0.0;
  std::vector<int> grids{32, 64, 128};
  std::vector<double> eps_list{0.0, 0.5};
  bool weighted = false;
};

// A report with its JSON form, an optional CSV writer and the exit status it implies.
struct Outcome {
  json doc;
  std::function<void(std::ostream&)> csv;
  bool pass = true;
};

GridSpec grid_of(const Common& c) { return make_grid(c.n_points, c.period); }

ComplexExpr symbol_of(const SymbolInput& in) {
  if (!in.symbol.empty() && !in.builtin.empty()) throw CLI::ValidationError("--symbol and --builtin are exclusive");
  if (!in.builtin.empty()) {
    BuiltinParams params;
    params.theta = in.theta;
    params.m1 = in.m1;
    params.m2 = in.m2;
    if (!in.profile.empty()) params.profile = sym::parse(in.profile);
    return ComplexExpr(builtin(in.builtin, params));
  }
  if (in.symbol.empty()) throw CLI::ValidationError("a symbol is required (--symbol or --builtin)");
  return sym::parse_complex(in.symbol);
}

ClassSpec class_of(const Options& o) {
  return make_class_spec(variant_from_name(o.cls.variant), o.sym.m1, o.sym.m2, o.sym.theta, o.cls.order, o.cls.rho,
                         o.cls.delta);
}

Outcome cmd_apply(const Options& o) {
  const GridSpec grid = grid_of(o.common);
  if (o.f.empty()) throw CLI::ValidationError("--f is required");
  const SampledFunction f = sample_function(sym::parse_complex(o.f), grid);
  SampledFunction out = f;
  json meta;
  if (!o.tau.empty()) {
    out = apply_linear(sample_linear_symbol(sym::parse_complex(o.tau), grid), f);
    meta = {{"operator", "linear"}, {"tau", o.tau}};
  } else {
    if (o.g.empty()) throw CLI::ValidationError("--g is required for a bilinear operator");
    const ComplexExpr sigma = symbol_of(o.sym);
    out = apply_bilinear(sample_symbol(sigma, grid), f, sample_function(sym::parse_complex(o.g), grid));
    meta = {{"operator", "bilinear"}, {"symbol", sym::to_string(sigma)}};
  }
  json doc = io::to_json(out);
  doc["input"] = meta;
  return {io::document("sampled_function", doc), [out](std::ostream& s) { io::write_function_csv(out, s); }};
}

Outcome cmd_check_class(const Options& o) {
  const ComplexExpr sigma = symbol_of(o.sym);
  CheckOptions opts;
  if (o.ceiling > 0.0) opts.ceiling = o.ceiling;
  const DecayReport r = check_class(sigma, class_of(o), grid_of(o.common), opts);
  json doc = io::to_json(r);
  doc["symbol"] = sym::to_string(sigma);
  return {io::document("decay_report", doc),
          [r](std::ostream& s) {
            s << "a,b,c,constant,ceiling,pass\n";
            for (const auto& e : r.orders)
              s << e.a << ',' << e.b << ',' << e.c << ',' << io::format_double(e.constant) << ','
                << io::format_double(e.ceiling) << ',' << (e.pass ? 1 : 0) << '\n';
          },
          r.pass()};
}

double max_abs(const LinearSymbolGrid& t) {
  double m = 0.0;
  for (const auto& z : t.tensor) m = std::max(m, std::abs(z));
  return m;
}

json comparison(double diff, double scale) {
  return {{"max_abs_difference", diff}, {"exact_max_abs", scale},
          {"relative", scale > 0 ? diff / scale : diff}};
}

Outcome cmd_adjoint(const Options& o) {
  const GridSpec grid = grid_of(o.common);
  const ComplexExpr sigma = symbol_of(o.sym);
  const ClassSpec spec = class_of(o);
  const ExpansionSeries series = adjoint_expansion(sigma, o.which, o.terms, spec);
  const SymbolGrid sg = sample_symbol(sigma, grid);
  const SymbolGrid exact = adjoint_exact(sg, o.which);
  const auto mask = adjoint_interior(grid, o.which, x_bandwidth(sg));
  const double diff = max_difference(sample_symbol(series.sum(), grid), exact, mask);
  json doc = io::to_json(series);
  doc["symbol"] = sym::to_string(sigma);
  doc["class"] = io::to_json(spec);
  doc["dual_class"] = io::to_json(duality_class_map(spec, o.which));
  doc["adjoint_angle"] = adjoint_angle(spec.theta, o.which);
  doc["expansion_vs_exact"] = comparison(diff, max_abs(exact));
  return {io::document("adjoint", doc), nullptr};
}

Outcome cmd_compose(const Options& o) {
  const GridSpec grid = grid_of(o.common);
  const ComplexExpr sigma = symbol_of(o.sym);
  const SymbolGrid sg = sample_symbol(sigma, grid);
  json doc;
  if (o.side == "right") {
    if (o.tau1.empty() || o.tau2.empty()) throw CLI::ValidationError("--tau1 and --tau2 are required");
    const ComplexExpr t1 = sym::parse_complex(o.tau1), t2 = sym::parse_complex(o.tau2);
    const ExpansionSeries series = compose_right_expansion(sigma, t1, t2, o.terms, o.p_terms);
    const LinearSymbolGrid g1 = sample_linear_symbol(t1, grid), g2 = sample_linear_symbol(t2, grid);
    const SymbolGrid exact = compose_right_exact(sg, g1, g2);
    const auto mask = compose_right_interior(grid, x_bandwidth(g1), x_bandwidth(g2));
    doc = io::to_json(series);
    doc["expansion_vs_exact"] =
        comparison(max_difference(sample_symbol(series.sum(), grid), exact, mask), max_abs(exact));
  } else if (o.side == "left") {
    if (o.tau.empty()) throw CLI::ValidationError("--tau is required");
    const ComplexExpr tau = sym::parse_complex(o.tau);
    const ExpansionSeries series = compose_left_expansion(tau, sigma, o.terms);
    const SymbolGrid exact = compose_left_exact(sample_linear_symbol(tau, grid), sg);
    const auto mask = compose_left_interior(grid, x_bandwidth(sg));
    doc = io::to_json(series);
    doc["expansion_vs_exact"] =
        comparison(max_difference(sample_symbol(series.sum(), grid), exact, mask), max_abs(exact));
  } else {
    throw CLI::ValidationError("--side must be right or left");
  }
  doc["symbol"] = sym::to_string(sigma);
  return {io::document("composition", doc), nullptr};
}

Outcome cmd_expand(const Options& o) {
  const GridSpec grid = grid_of(o.common);
  json doc;
  if (o.kind == "linear-adjoint") {
    if (o.tau.empty()) throw CLI::ValidationError("--tau is required");
    const ComplexExpr tau = sym::parse_complex(o.tau);
    const ExpansionSeries series = linear_adjoint_expansion(tau, o.terms);
    const LinearSymbolGrid tg = sample_linear_symbol(tau, grid);
    const LinearSymbolGrid exact = linear_adjoint_exact(tg);
    doc = io::to_json(series);
    doc["expansion_vs_exact"] = comparison(
        max_difference(sample_linear_symbol(series.sum(), grid), exact, linear_interior(grid, x_bandwidth(tg))),
        max_abs(exact));
  } else if (o.kind == "linear-compose") {
    if (o.tau1.empty() || o.tau2.empty()) throw CLI::ValidationError("--tau1 and --tau2 are required");
    const ComplexExpr t1 = sym::parse_complex(o.tau1), t2 = sym::parse_complex(o.tau2);
    const ExpansionSeries series = linear_compose_expansion(t1, t2, o.terms);
    const LinearSymbolGrid g1 = sample_linear_symbol(t1, grid), g2 = sample_linear_symbol(t2, grid);
    const LinearSymbolGrid exact = linear_compose_exact(g1, g2);
    const auto mask = linear_interior(grid, x_bandwidth(g1) + x_bandwidth(g2));
    doc = io::to_json(series);
    doc["expansion_vs_exact"] = comparison(max_difference(sample_linear_symbol(series.sum(), grid), exact, mask), max_abs(exact));
  } else if (o.kind == "conjugation") {
    if (o.kappa.empty()) throw CLI::ValidationError("--kappa is required");
    const ComplexExpr sigma = symbol_of(o.sym);
    const sym::Expr kappa = sym::parse(o.kappa);
    const ComplexExpr conj = principal_conjugation(sigma, kappa, &grid);
    const SymbolGrid exact =
        principal_conjugation_exact(sample_symbol(sigma, grid), sample_linear_symbol(ComplexExpr(kappa), grid));
    const auto mask = compose_left_interior(grid, x_bandwidth(exact));
    doc = {{"symbol", sym::to_string(sigma)}, {"kappa", sym::to_string(kappa)}, {"conjugated", sym::to_string(conj)},
           {"formula_vs_exact", comparison(max_difference(sample_symbol(conj, grid), exact, mask), max_abs(exact))}};
  } else if (o.kind == "split") {
    const ComplexExpr sigma = symbol_of(o.sym);
    const SplitSymbol parts = split_symbol(sigma);
    doc = {{"symbol", sym::to_string(sigma)},
           {"low", sym::to_string(parts.low)},
           {"high", sym::to_string(parts.high)}};
  } else {
    throw CLI::ValidationError("--kind must be linear-adjoint, linear-compose, conjugation or split");
  }
  return {io::document("expansion", doc), nullptr};
}

Outcome cmd_norms(const Options& o) {
  const GridSpec grid = grid_of(o.common);
  json doc;
  if (!o.f.empty()) {
    const SampledFunction f = sample_function(sym::parse_complex(o.f), grid);
    const double width = o.window > 0.0 ? o.window : grid.period / 8.0;
    const SampledFunction window = gaussian_window(grid, width);
    doc["function"] = o.f;
    doc["lebesgue"] = {{"p", o.p}, {"value", lebesgue_norm(f, o.p)}};
    doc["sobolev"] = {{"s", o.s}, {"p", o.p}, {"value", sobolev_norm(f, o.s, o.p)}};
    doc["modulation"] = {{"p", o.p}, {"t", o.t}, {"window_width", width},
                         {"value", modulation_norm(f, window, o.p, o.t)}};
  }
  if (!o.amnorm_expr.empty()) {
    const sym::Expr a = sym::parse(o.amnorm_expr);
    doc["amnorm"] = {{"expression", sym::to_string(a)}, {"m", o.m}, {"j_max", o.j_max}, {"l_max", o.l_max},
                     {"value", amnorm(a, o.m, grid, o.j_max, o.l_max)}};
  }
  if (doc.is_null()) throw CLI::ValidationError("--f or --amnorm is required");
  return {io::document("norms", doc), nullptr};
}

Outcome cmd_verify(const Options& o) {
  Report r;
  if (o.suite == "identities") {
    const ComplexExpr sigma = o.sym.symbol.empty() && o.sym.builtin.empty() ? ComplexExpr(sym::Expr(1.0)) : symbol_of(o.sym);
    r = identity_suite(sigma, grid_of(o.common), o.common.seed);
  } else if (o.suite == "epsilon") {
    ProbeOptions probe;
    probe.seed = o.common.seed;
    probe.trials = o.trials;
    probe.p = o.p;
    probe.q = o.q;
    if (o.sym.theta != 0.0) probe.theta = o.sym.theta;
    if (!o.sym.symbol.empty() || !o.sym.builtin.empty()) probe.symbol = symbol_of(o.sym);
    r = epsilon_necessity_probe(o.weighted, o.eps_list, o.grids, probe);
  } else {
    throw CLI::ValidationError("--suite must be identities or epsilon");
  }
  return {io::document("report", io::to_json(r)), [r](std::ostream& s) { io::write_report_csv(r, s); }, r.all_pass()};
}

Outcome cmd_study(const Options& o) {
  const ComplexExpr sigma = symbol_of(o.sym);
  const Ensemble ens{o.common.seed, o.trials, o.bandwidth};
  const RatioReport r = boundedness_study(sigma, class_of(o), o.p, o.q, o.s, o.eps, ens, o.grids, o.common.period);
  const bool pass = r.growth_factor < tolerances::kGrowthFactorLimit;
  json doc = io::to_json(r);
  doc["symbol"] = sym::to_string(sigma);
  doc["growth_factor_limit"] = tolerances::kGrowthFactorLimit;
  doc["pass"] = pass;
  return {io::document("ratio_report", doc), [r](std::ostream& s) { io::write_ratio_csv(r, s); }, pass};
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.common.n_points, "grid points (even, >= 4)");
  cmd->add_option("--period", o.common.period, "period of the grid");
  cmd->add_option("--seed", o.common.seed, "random seed");
  cmd->add_option("--format", o.common.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--output", o.common.output, "output path (default stdout)");
}

void add_symbol(CLI::App* cmd, Options& o) {
  cmd->add_option("--symbol", o.sym.symbol, "bilinear symbol over x, alpha, beta");
  cmd->add_option("--builtin", o.sym.builtin, "builtin symbol family");
  cmd->add_option("--theta", o.sym.theta, "angle");
  cmd->add_option("--profile", o.sym.profile, "profile over x, xi for builtins");
  cmd->add_option("--m1", o.sym.m1, "first order");
  cmd->add_option("--m2", o.sym.m2, "second order");
}

void add_class(CLI::App* cmd, Options& o) {
  cmd->add_option("--class", o.cls.variant, "class variant");
  cmd->add_option("--rho", o.cls.rho);
  cmd->add_option("--delta", o.cls.delta);
  cmd->add_option("--order", o.cls.order, "maximal derivative order");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Bilinear pseudodifferential operators on periodic grids", "bipdo"};
  app.require_subcommand(1);

  auto* apply = app.add_subcommand("apply", "apply a bilinear (or linear, with --tau) operator");
  add_common(apply, o);
  add_symbol(apply, o);
  apply->add_option("--f", o.f, "first input over x");
  apply->add_option("--g", o.g, "second input over x");
  apply->add_option("--tau", o.tau, "linear symbol over x, xi");

  auto* check = app.add_subcommand("check-class", "measure symbol-class decay constants");
  add_common(check, o);
  add_symbol(check, o);
  add_class(check, o);
  check->add_option("--ceiling", o.ceiling, "fixed ceiling replacing calibration");

  auto* adjoint = app.add_subcommand("adjoint", "adjoint expansion against the exact adjoint");
  add_common(adjoint, o);
  add_symbol(adjoint, o);
  add_class(adjoint, o);
  adjoint->add_option("--which", o.which)->check(CLI::IsMember({1, 2}));
  adjoint->add_option("--terms", o.terms, "retained terms");

  auto* compose = app.add_subcommand("compose", "composition expansion against the exact symbol");
  add_common(compose, o);
  add_symbol(compose, o);
  compose->add_option("--side", o.side)->check(CLI::IsMember({"right", "left"}));
  compose->add_option("--tau", o.tau);
  compose->add_option("--tau1", o.tau1);
  compose->add_option("--tau2", o.tau2);
  compose->add_option("--terms", o.terms, "retained terms in the first slot");
  compose->add_option("--P", o.p_terms, "retained terms in the second slot");

  auto* expand = app.add_subcommand("expand", "linear expansions, principal conjugation, frequency splitting");
  add_common(expand, o);
  add_symbol(expand, o);
  expand->add_option("--kind", o.kind)->check(CLI::IsMember({"linear-adjoint", "linear-compose", "conjugation", "split"}));
  expand->add_option("--tau", o.tau);
  expand->add_option("--tau1", o.tau1);
  expand->add_option("--tau2", o.tau2);
  expand->add_option("--kappa", o.kappa);
  expand->add_option("--terms", o.terms);

  auto* norms = app.add_subcommand("norms", "Lebesgue, Sobolev, modulation and A^m norms");
  add_common(norms, o);
  norms->add_option("--f", o.f);
  norms->add_option("--p", o.p);
  norms->add_option("--s", o.s);
  norms->add_option("--t", o.t, "outer modulation exponent");
  norms->add_option("--window", o.window, "Gaussian window width");
  norms->add_option("--amnorm", o.amnorm_expr, "expression over y, alpha");
  norms->add_option("--m", o.m);
  norms->add_option("--jmax", o.j_max);
  norms->add_option("--lmax", o.l_max);

  auto* verify = app.add_subcommand("verify", "identity suite or epsilon probe");
  add_common(verify, o);
  add_symbol(verify, o);
  verify->add_option("--suite", o.suite)->check(CLI::IsMember({"identities", "epsilon"}));
  verify->add_flag("--weighted", o.weighted);
  verify->add_option("--eps", o.eps_list);
  verify->add_option("--grids", o.grids);
  verify->add_option("--trials", o.trials);
  verify->add_option("--p", o.p);
  verify->add_option("--q", o.q);

  auto* study = app.add_subcommand("study", "boundedness-ratio study");
  add_common(study, o);
  add_symbol(study, o);
  add_class(study, o);
  study->add_option("--p", o.p);
  study->add_option("--q", o.q);
  study->add_option("--s", o.s);
  study->add_option("--eps", o.eps);
  study->add_option("--trials", o.trials);
  study->add_option("--grids", o.grids);
  study->add_option("--bandwidth", o.bandwidth, "largest retained mode; -1 for n/4 - 1");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  }

  Outcome result;
  try {
    if (*apply) result = cmd_apply(o);
    else if (*check) result = cmd_check_class(o);
    else if (*adjoint) result = cmd_adjoint(o);
    else if (*compose) result = cmd_compose(o);
    else if (*expand) result = cmd_expand(o);
    else if (*norms) result = cmd_norms(o);
    else if (*verify) result = cmd_verify(o);
    else result = cmd_study(o);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::ostringstream text;
  if (o.common.format == "csv") {
    if (!result.csv) {
      err << "error: this subcommand has no CSV output\n";
      return kExitUsage;
    }
    result.csv(text);
  } else {
    text << io::dump(result.doc) << '\n';
  }
  if (o.common.output.empty()) {
    out << text.str();
  } else {
    std::ofstream file(o.common.output, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << o.common.output << '\n';
      return kExitUsage;
    }
    file << text.str();
  }
  return result.pass ? kExitOk : kExitCheckFailed;
}

}  // namespace bipdo::cli
