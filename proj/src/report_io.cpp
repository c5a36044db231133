// SPDX-License-Identifier: Apache-2.0
#include "bipdo/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace bipdo::io {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

json number(double v) {
  if (!std::isfinite(v)) return format_double(v);
  return v;
}

std::string quote(const std::string& s) { return json(s).dump(); }

void emit(const json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent) * (depth + 1), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent) * depth, ' ') : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {  // std::map ordering: sorted keys
        if (!first) out += ',';
        first = false;
        out += pad + quote(k) + sep;
        emit(v, indent, depth + 1, out);
      }
      out += close + '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        out += pad;
        emit(v, indent, depth + 1, out);
      }
      out += close + ']';
      return;
    }
    case json::value_t::number_float:
      out += std::isfinite(j.get<double>()) ? format_double(j.get<double>()) : quote(format_double(j.get<double>()));
      return;
    default:
      out += j.dump();
  }
}

json complex_pair(cplx z) { return json::array({number(z.real()), number(z.imag())}); }

}  // namespace

std::string dump(const json& j, int indent) {
  std::string out;
  emit(j, indent, 0, out);
  return out;
}

json document(const std::string& kind, json body) {
  body["schema_version"] = kSchemaVersion;
  body["kind"] = kind;
  return body;
}

json to_json(const ClassSpec& spec) {
  return {{"variant", variant_name(spec.variant)},
          {"m1", number(spec.m1)},
          {"m2", number(spec.m2)},
          {"rho", number(spec.rho)},
          {"delta", number(spec.delta)},
          {"theta", number(spec.theta)},
          {"max_deriv_order", spec.max_deriv_order}};
}

json to_json(const DecayReport& report) {
  json orders = json::array();
  for (const auto& e : report.orders) {
    orders.push_back({{"a", e.a},
                      {"b", e.b},
                      {"c", e.c},
                      {"constant", number(e.constant)},
                      {"ceiling", number(e.ceiling)},
                      {"worst_point", json::array({number(e.worst_point[0]), number(e.worst_point[1]),
                                                   number(e.worst_point[2])})},
                      {"pass", e.pass}});
  }
  return {{"class", to_json(report.spec)}, {"orders", orders}, {"pass", report.pass()}};
}

json to_json(const ExpansionSeries& series) {
  json terms = json::array();
  for (const auto& t : series.terms) {
    terms.push_back({{"k", t.k},
                     {"j", t.j},
                     {"coefficient", {{"re", t.coefficient.re}, {"im", t.coefficient.im}, {"den", t.coefficient.den}}},
                     {"derivative", sym::to_string(t.derivative)}});
  }
  json out = {{"expansion", series.kind},
              {"orders", json::array({series.n_terms, series.p_terms})},
              {"terms", terms},
              {"sum", sym::to_string(series.sum())}};
  if (series.which) out["which"] = series.which;
  out["remainder_class"] = series.remainder_class ? to_json(*series.remainder_class) : json(nullptr);
  return out;
}

json to_json(const RatioReport& report) {
  json grids = json::array();
  for (const auto& g : report.grids)
    grids.push_back({{"n_points", g.n_points},
                     {"max_ratio", number(g.max_ratio)},
                     {"median_ratio", number(g.median_ratio)},
                     {"skipped", g.skipped}});
  json rows = json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"seed", r.seed}, {"grid", r.n_points}, {"trial", r.trial}, {"ratio", number(r.ratio)},
                    {"skipped", r.skipped}});
  return {{"p", number(report.p)},   {"q", number(report.q)},   {"r", number(report.r)},
          {"s", number(report.s)},   {"eps", number(report.eps)}, {"m1", number(report.m1)},
          {"m2", number(report.m2)}, {"grids", grids},           {"rows", rows},
          {"growth_factor", number(report.growth_factor)}};
}

json to_json(const Report& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    json j = {{"name", e.name}, {"measured", number(e.measured)}, {"pass", e.pass}};
    if (e.observational)
      j["observational"] = true;
    else
      j["tolerance"] = number(e.tolerance);
    if (!e.detail.empty()) j["detail"] = e.detail;
    entries.push_back(std::move(j));
  }
  return {{"title", report.title}, {"entries", entries}, {"pass", report.all_pass()}};
}

json to_json(const SampledFunction& f) {
  json samples = json::array(), spectrum = json::array();
  for (const auto& z : f.samples()) samples.push_back(complex_pair(z));
  for (int j = 0; j < f.grid().n_points; ++j)
    spectrum.push_back({{"k", f.grid().mode_of_index(j)}, {"value", complex_pair(f.spectrum()[j])}});
  return {{"grid", {{"n_points", f.grid().n_points}, {"period", number(f.grid().period)}}},
          {"samples", samples},
          {"spectrum", spectrum}};
}

void write_ratio_csv(const RatioReport& report, std::ostream& out) {
  out << kRatioCsvHeader << '\n';
  for (const auto& r : report.rows) {
    out << r.seed << ',' << r.n_points << ',' << format_double(report.p) << ',' << format_double(report.q) << ','
        << format_double(report.r) << ',' << format_double(report.s) << ',' << format_double(report.eps) << ','
        << format_double(r.ratio) << ',' << (r.skipped ? 1 : 0) << '\n';
  }
}

void write_summary_csv(const RatioReport& report, std::ostream& out) {
  out << "grid,max_ratio,median_ratio,skipped\n";
  for (const auto& g : report.grids)
    out << g.n_points << ',' << format_double(g.max_ratio) << ',' << format_double(g.median_ratio) << ',' << g.skipped
        << '\n';
}

void write_function_csv(const SampledFunction& f, std::ostream& out) {
  out << "x,re,im\n";
  for (int n = 0; n < f.grid().n_points; ++n)
    out << format_double(f.grid().x(n)) << ',' << format_double(f.samples()[n].real()) << ','
        << format_double(f.samples()[n].imag()) << '\n';
}

void write_report_csv(const Report& report, std::ostream& out) {
  out << "name,measured,tolerance,pass,observational\n";
  for (const auto& e : report.entries)
    out << e.name << ',' << format_double(e.measured) << ',' << format_double(e.tolerance) << ',' << (e.pass ? 1 : 0)
        << ',' << (e.observational ? 1 : 0) << '\n';
}

}  // namespace bipdo::io
