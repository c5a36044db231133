// SPDX-License-Identifier: Apache-2.0
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "bipdo/symlang.hpp"

namespace bipdo::sym {
namespace {

Expr derivative_once(const Expr& e, Var v) {
  std::unordered_map<const Node*, Expr> memo;
  std::function<Expr(const NodePtr&)> d = [&](const NodePtr& p) -> Expr {
    const Node& n = *p;
    if (n.op == Op::Const) return Expr(0.0);
    if (n.op == Op::Variable) return Expr(n.var == v ? 1.0 : 0.0);
    auto it = memo.find(p.get());
    if (it != memo.end()) return it->second;

    const Expr a(n.a);
    const Expr da = d(n.a);
    Expr r;
    switch (n.op) {
      case Op::Add: r = da + d(n.b); break;
      case Op::Sub: r = da - d(n.b); break;
      case Op::Neg: r = -da; break;
      case Op::Mul: {
        const Expr b(n.b);
        r = da * b + a * d(n.b);
        break;
      }
      case Op::Div: {
        const Expr b(n.b);
        const Expr db = d(n.b);
        if (db.is_const(0.0))
          r = da / b;
        else
          r = (da * b - a * db) / pow(b, 2.0);
        break;
      }
      case Op::Pow: {
        if (da.is_const(0.0)) {
          r = Expr(0.0);
          break;
        }
        r = Expr(n.value) * pow(a, n.value - 1.0) * da;
        break;
      }
      case Op::Exp: r = Expr(p) * da; break;
      case Op::Log: r = da / a; break;
      case Op::Sin: r = cos(a) * da; break;
      case Op::Cos: r = -(sin(a) * da); break;
      case Op::Tan: r = (Expr(1.0) + pow(Expr(p), 2.0)) * da; break;
      case Op::Atan: r = da / (Expr(1.0) + pow(a, 2.0)); break;
      case Op::Sqrt: r = da / (Expr(2.0) * Expr(p)); break;
      case Op::Bracket: r = a * da / Expr(p); break;
      case Op::Cutoff: r = cutoff(a, n.order + 1) * da; break;
      case Op::Const:
      case Op::Variable: break;
    }
    memo.emplace(p.get(), r);
    return r;
  };
  return d(e.ptr());
}

}  // namespace

Expr differentiate(const Expr& e, Var v, int order) {
  if (order < 0) throw std::invalid_argument("derivative order must be non-negative");
  if (v == Var::I) throw std::invalid_argument("cannot differentiate with respect to the imaginary unit");
  Expr r = e;
  for (int k = 0; k < order && !r.is_const(0.0); ++k) r = derivative_once(r, v);
  return r;
}

ComplexExpr differentiate(const ComplexExpr& e, Var v, int order) {
  return {differentiate(e.re, v, order), differentiate(e.im, v, order)};
}

Expr directional_derivative(const Expr& e, Direction dir, int order) {
  if (order < 0) throw std::invalid_argument("derivative order must be non-negative");
  Expr r = e;
  for (int k = 0; k < order && !r.is_const(0.0); ++k) {
    switch (dir) {
      case Direction::DAlpha: r = derivative_once(r, Var::Alpha); break;
      case Direction::DBeta: r = derivative_once(r, Var::Beta); break;
      case Direction::DBetaMinusAlpha: r = derivative_once(r, Var::Beta) - derivative_once(r, Var::Alpha); break;
      case Direction::DAlphaMinusBeta: r = derivative_once(r, Var::Alpha) - derivative_once(r, Var::Beta); break;
    }
  }
  return r;
}

ComplexExpr directional_derivative(const ComplexExpr& e, Direction dir, int order) {
  return {directional_derivative(e.re, dir, order), directional_derivative(e.im, dir, order)};
}

}  // namespace bipdo::sym
