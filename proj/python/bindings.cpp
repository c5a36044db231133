// SPDX-License-Identifier: Apache-2.0
#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bipdo/calculus.hpp"
#include "bipdo/cli.hpp"
#include "bipdo/report_io.hpp"
#include "bipdo/verify.hpp"

namespace py = pybind11;
using namespace bipdo;
using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

namespace {

CVec to_cvec(const CArray& a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a one-dimensional array");
  return CVec(a.data(), a.data() + a.size());
}

CArray to_array(const CVec& v) {
  CArray out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

SampledFunction sampled(const CArray& a, double period) {
  CVec v = to_cvec(a);
  const GridSpec grid = make_grid(static_cast<int>(v.size()), period);
  return SampledFunction::from_samples(grid, std::move(v));
}

/// (N, N, N) array indexed [x, alpha, beta] in centered frequency order.
CArray symbol_array(const SymbolGrid& s) {
  const SymbolGrid full = s.expanded();
  const py::ssize_t N = full.grid.n_points;
  CArray out({N, N, N});
  std::copy(full.tensor.begin(), full.tensor.end(), out.mutable_data());
  return out;
}

std::string dumps(const nlohmann::json& j) { return io::dump(j, -1); }

ClassSpec spec_of(const std::string& variant, double m1, double m2, double theta, int order) {
  return make_class_spec(variant_from_name(variant), m1, m2, theta, order);
}

}  // namespace

PYBIND11_MODULE(_bipdo, m) {
  m.doc() = "Bilinear pseudodifferential operators on periodic grids";

  m.def("parse", [](const std::string& s) { return sym::to_string(sym::parse_complex(s)); }, py::arg("source"));
  m.def(
      "differentiate",
      [](const std::string& s, const std::string& var, int order) {
        const auto v = sym::var_from_name(var);
        if (!v) throw py::value_error("unknown variable '" + var + "'");
        return sym::to_string(sym::differentiate(sym::parse_complex(s), *v, order));
      },
      py::arg("source"), py::arg("var"), py::arg("order") = 1);
  m.def(
      "evaluate",
      [](const std::string& s, double x, double alpha, double beta) {
        const sym::CompiledExpr code(sym::parse_complex(s));
        double out[2];
        code.eval(sym::make_point(x, alpha, beta), out);
        return cplx(out[0], out[1]);
      },
      py::arg("source"), py::arg("x") = 0.0, py::arg("alpha") = 0.0, py::arg("beta") = 0.0);

  m.def("transform", [](const CArray& a, double period) {
    const CVec v = to_cvec(a);
    return to_array(transform(make_grid(static_cast<int>(v.size()), period), v));
  }, py::arg("samples"), py::arg("period") = conventions::kTwoPi);
  m.def("inverse_transform", [](const CArray& a, double period) {
    const CVec v = to_cvec(a);
    return to_array(inverse_transform(make_grid(static_cast<int>(v.size()), period), v));
  }, py::arg("spectrum"), py::arg("period") = conventions::kTwoPi);
  m.def("grid_points", [](int n, double period) {
    const GridSpec g = make_grid(n, period);
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = g.x(i);
    return x;
  }, py::arg("n"), py::arg("period") = conventions::kTwoPi);
  m.def("sample_function", [](const std::string& s, int n, double period) {
    return to_array(sample_function(sym::parse_complex(s), make_grid(n, period)).samples());
  }, py::arg("source"), py::arg("n"), py::arg("period") = conventions::kTwoPi);

  m.def("apply_bilinear", [](const std::string& symbol, const CArray& f, const CArray& g, double period) {
    const SampledFunction sf = sampled(f, period), sg = sampled(g, period);
    const auto e = sym::parse_complex(symbol);
    CVec out;
    {
      py::gil_scoped_release release;
      out = apply_bilinear(sample_symbol(e, sf.grid()), sf, sg).samples();
    }
    return to_array(out);
  }, py::arg("symbol"), py::arg("f"), py::arg("g"), py::arg("period") = conventions::kTwoPi);
  m.def("apply_linear", [](const std::string& tau, const CArray& f, double period) {
    const SampledFunction sf = sampled(f, period);
    return to_array(apply_linear(sample_linear_symbol(sym::parse_complex(tau), sf.grid()), sf).samples());
  }, py::arg("tau"), py::arg("f"), py::arg("period") = conventions::kTwoPi);
  m.def("sample_symbol", [](const std::string& symbol, int n, double period) {
    return symbol_array(sample_symbol(sym::parse_complex(symbol), make_grid(n, period)));
  }, py::arg("symbol"), py::arg("n"), py::arg("period") = conventions::kTwoPi);
  m.def("adjoint_exact", [](const std::string& symbol, int which, int n, double period) {
    return symbol_array(adjoint_exact(sample_symbol(sym::parse_complex(symbol), make_grid(n, period)), which));
  }, py::arg("symbol"), py::arg("which"), py::arg("n"), py::arg("period") = conventions::kTwoPi);

  m.def("lebesgue_norm", [](const CArray& f, double p, double period) { return lebesgue_norm(sampled(f, period), p); },
        py::arg("f"), py::arg("p"), py::arg("period") = conventions::kTwoPi);
  m.def("sobolev_norm", [](const CArray& f, double s, double p, double period) {
    return sobolev_norm(sampled(f, period), s, p);
  }, py::arg("f"), py::arg("s"), py::arg("p"), py::arg("period") = conventions::kTwoPi);
  m.def("modulation_norm", [](const CArray& f, double p, double t, double width, double period) {
    const SampledFunction sf = sampled(f, period);
    return modulation_norm(sf, gaussian_window(sf.grid(), width), p, t);
  }, py::arg("f"), py::arg("p"), py::arg("t"), py::arg("width"), py::arg("period") = conventions::kTwoPi);

  m.def("adjoint_angle", &adjoint_angle, py::arg("theta"), py::arg("which"));
  m.def("builtin", [](const std::string& name, double theta, double m1, double m2) {
    BuiltinParams p;
    p.theta = theta;
    p.m1 = m1;
    p.m2 = m2;
    return sym::to_string(builtin(name, p));
  }, py::arg("name"), py::arg("theta") = 0.0, py::arg("m1") = 0.0, py::arg("m2") = 0.0);

  m.def("check_class_json", [](const std::string& symbol, const std::string& variant, double m1, double m2,
                               double theta, int order, int n, double period) {
    const auto e = sym::parse_complex(symbol);
    const ClassSpec spec = spec_of(variant, m1, m2, theta, order);
    py::gil_scoped_release release;
    return dumps(io::to_json(check_class(e, spec, make_grid(n, period))));
  }, py::arg("symbol"), py::arg("variant"), py::arg("m1") = 0.0, py::arg("m2") = 0.0, py::arg("theta") = 0.0,
        py::arg("order") = 2, py::arg("n") = 32, py::arg("period") = conventions::kTwoPi);
  m.def("adjoint_expansion_json", [](const std::string& symbol, int which, int terms) {
    return dumps(io::to_json(adjoint_expansion(sym::parse_complex(symbol), which, terms)));
  }, py::arg("symbol"), py::arg("which"), py::arg("terms"));
  m.def("compose_right_expansion_json", [](const std::string& symbol, const std::string& tau1, const std::string& tau2,
                                           int n_terms, int p_terms) {
    return dumps(io::to_json(compose_right_expansion(sym::parse_complex(symbol), sym::parse_complex(tau1),
                                                     sym::parse_complex(tau2), n_terms, p_terms)));
  }, py::arg("symbol"), py::arg("tau1"), py::arg("tau2"), py::arg("n_terms"), py::arg("p_terms"));
  m.def("compose_left_expansion_json", [](const std::string& tau, const std::string& symbol, int n_terms) {
    return dumps(io::to_json(compose_left_expansion(sym::parse_complex(tau), sym::parse_complex(symbol), n_terms)));
  }, py::arg("tau"), py::arg("symbol"), py::arg("n_terms"));
  m.def("identity_suite_json", [](const std::string& symbol, int n, std::uint64_t seed, double period) {
    const auto e = sym::parse_complex(symbol);
    py::gil_scoped_release release;
    return dumps(io::to_json(identity_suite(e, make_grid(n, period), seed)));
  }, py::arg("symbol"), py::arg("n"), py::arg("seed"), py::arg("period") = conventions::kTwoPi);
  m.def("boundedness_study_json", [](const std::string& symbol, const std::string& variant, double m1, double m2,
                                     double theta, double p, double q, double s, double eps, std::uint64_t seed,
                                     int trials, std::vector<int> grids) {
    const auto e = sym::parse_complex(symbol);
    const ClassSpec spec = spec_of(variant, m1, m2, theta, 2);
    py::gil_scoped_release release;
    return dumps(io::to_json(boundedness_study(e, spec, p, q, s, eps, Ensemble{seed, trials, -1}, grids)));
  }, py::arg("symbol"), py::arg("variant") = "plain", py::arg("m1") = 0.0, py::arg("m2") = 0.0,
        py::arg("theta") = 0.0, py::arg("p") = 4.0, py::arg("q") = 4.0, py::arg("s") = 0.0, py::arg("eps") = 0.1,
        py::arg("seed") = 7, py::arg("trials") = 10, py::arg("grids") = std::vector<int>{32, 64});

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));

  py::register_exception<sym::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<sym::ValidationError>(m, "ValidationError", PyExc_ValueError);
}
