// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <functional>
#include <unordered_map>

#include "bipdo/symlang.hpp"

namespace bipdo::sym {
namespace {

ComplexExpr integer_power(const ComplexExpr& z, long k) {
  ComplexExpr result(Expr(1.0));
  ComplexExpr base = z;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

ComplexExpr divide(const ComplexExpr& a, const ComplexExpr& b) {
  if (b.is_real()) return {a.re / b.re, a.im / b.re};
  const Expr den = pow(b.re, 2.0) + pow(b.im, 2.0);
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

Expr cosh(const Expr& u) { return (exp(u) + exp(-u)) / Expr(2.0); }
Expr sinh(const Expr& u) { return (exp(u) - exp(-u)) / Expr(2.0); }

}  // namespace

ComplexExpr complexify(const Expr& e) {
  std::unordered_map<const Node*, ComplexExpr> memo;
  std::function<ComplexExpr(const NodePtr&)> rec = [&](const NodePtr& p) -> ComplexExpr {
    const Node& n = *p;
    if (n.op == Op::Const) return ComplexExpr(Expr(p));
    if (n.op == Op::Variable) {
      if (n.var == Var::I) return ComplexExpr(Expr(0.0), Expr(1.0));
      return ComplexExpr(Expr(p));
    }
    auto it = memo.find(p.get());
    if (it != memo.end()) return it->second;

    const ComplexExpr a = rec(n.a);
    ComplexExpr r;
    auto require_real = [&](const char* what) {
      if (!a.is_real())
        throw ValidationError(std::string(what) + " of a complex argument is not supported");
    };
    switch (n.op) {
      case Op::Add: r = a + rec(n.b); break;
      case Op::Sub: r = a - rec(n.b); break;
      case Op::Mul: r = a * rec(n.b); break;
      case Op::Div: r = divide(a, rec(n.b)); break;
      case Op::Neg: r = -a; break;
      case Op::Pow: {
        if (a.is_real()) {
          r = ComplexExpr(pow(a.re, n.value));
          break;
        }
        const double q = n.value;
        if (std::floor(q) != q) throw ValidationError("fractional power of a complex base is not supported");
        const long k = static_cast<long>(std::fabs(q));
        r = integer_power(a, k);
        if (q < 0) r = divide(ComplexExpr(Expr(1.0)), r);
        break;
      }
      case Op::Exp: {
        const Expr m = exp(a.re);
        r = a.is_real() ? ComplexExpr(m) : ComplexExpr(m * cos(a.im), m * sin(a.im));
        break;
      }
      case Op::Sin:
        r = a.is_real() ? ComplexExpr(sin(a.re))
                        : ComplexExpr(sin(a.re) * cosh(a.im), cos(a.re) * sinh(a.im));
        break;
      case Op::Cos:
        r = a.is_real() ? ComplexExpr(cos(a.re))
                        : ComplexExpr(cos(a.re) * cosh(a.im), -(sin(a.re) * sinh(a.im)));
        break;
      case Op::Log: require_real("log"); r = ComplexExpr(log(a.re)); break;
      case Op::Tan: require_real("tan"); r = ComplexExpr(tan(a.re)); break;
      case Op::Atan: require_real("atan"); r = ComplexExpr(atan(a.re)); break;
      case Op::Sqrt: require_real("sqrt"); r = ComplexExpr(sqrt(a.re)); break;
      case Op::Bracket: require_real("bracket"); r = ComplexExpr(bracket(a.re)); break;
      case Op::Cutoff: require_real("cutoff"); r = ComplexExpr(cutoff(a.re, n.order)); break;
      case Op::Const:
      case Op::Variable: break;
    }
    memo.emplace(p.get(), r);
    return r;
  };
  return rec(e.ptr());
}

}  // namespace bipdo::sym
