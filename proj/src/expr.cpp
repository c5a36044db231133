// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "bipdo/symlang.hpp"

namespace bipdo::sym {
namespace {

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr, double value = 0.0, int order = 0) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  n->value = value;
  n->order = order;
  return n;
}

bool finite(double v) { return std::isfinite(v); }

Expr unary(Op op, const Expr& u, double (*fn)(double)) {
  if (u.is_const()) {
    const double v = fn(u.const_value());
    if (finite(v)) return Expr(v);
  }
  return Expr(make(op, u.ptr()));
}

}  // namespace

Expr::Expr(double c) : node_(make(Op::Const, nullptr, nullptr, c)) {}

Expr Expr::variable(Var v) {
  auto n = std::make_shared<Node>();
  n->op = Op::Variable;
  n->var = v;
  return Expr(NodePtr(std::move(n)));
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const()) return Expr(a.const_value() + b.const_value());
  if (a.is_const(0.0)) return b;
  if (b.is_const(0.0)) return a;
  if (b.op() == Op::Neg) return a - b.lhs();
  return Expr(make(Op::Add, a.ptr(), b.ptr()));
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const()) return Expr(a.const_value() - b.const_value());
  if (b.is_const(0.0)) return a;
  if (a.is_const(0.0)) return -b;
  if (a.ptr() == b.ptr()) return Expr(0.0);
  if (b.op() == Op::Neg) return a + b.lhs();
  return Expr(make(Op::Sub, a.ptr(), b.ptr()));
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const()) return Expr(a.const_value() * b.const_value());
  if (a.is_const(0.0) || b.is_const(0.0)) return Expr(0.0);
  if (a.is_const(1.0)) return b;
  if (b.is_const(1.0)) return a;
  if (a.is_const(-1.0)) return -b;
  if (b.is_const(-1.0)) return -a;
  // Keep constants on the left and merge nested constant factors.
  if (b.is_const()) return b * a;
  if (a.is_const() && b.op() == Op::Mul && b.lhs().is_const()) {
    const double c = a.const_value() * b.lhs().const_value();
    if (finite(c)) return Expr(c) * b.rhs();
  }
  if (a.op() == Op::Neg && b.op() == Op::Neg) return a.lhs() * b.lhs();
  if (a.op() == Op::Neg) return -(a.lhs() * b);
  if (b.op() == Op::Neg) return -(a * b.lhs());
  return Expr(make(Op::Mul, a.ptr(), b.ptr()));
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const() && b.const_value() != 0.0) {
    const double v = a.const_value() / b.const_value();
    if (finite(v)) return Expr(v);
  }
  if (b.is_const(1.0)) return a;
  if (b.is_const(-1.0)) return -a;
  if (a.is_const(0.0) && !b.is_const()) return Expr(0.0);
  return Expr(make(Op::Div, a.ptr(), b.ptr()));
}

Expr operator-(const Expr& a) {
  if (a.is_const()) return Expr(-a.const_value());
  if (a.op() == Op::Neg) return a.lhs();
  return Expr(make(Op::Neg, a.ptr()));
}

Expr pow(const Expr& base, double exponent) {
  if (exponent == 0.0) return Expr(1.0);
  if (exponent == 1.0) return base;
  if (base.is_const()) {
    const double v = std::pow(base.const_value(), exponent);
    if (finite(v)) return Expr(v);
  }
  if (base.op() == Op::Pow) {
    // (u^p)^q = u^(pq) for integer p and q.
    const double p = base.node().value;
    if (std::floor(p) == p && std::floor(exponent) == exponent)
      return pow(base.lhs(), p * exponent);
  }
  return Expr(make(Op::Pow, base.ptr(), nullptr, exponent));
}

Expr exp(const Expr& u) { return unary(Op::Exp, u, [](double v) { return std::exp(v); }); }
Expr log(const Expr& u) { return unary(Op::Log, u, [](double v) { return v > 0 ? std::log(v) : NAN; }); }
Expr sin(const Expr& u) { return unary(Op::Sin, u, [](double v) { return std::sin(v); }); }
Expr cos(const Expr& u) { return unary(Op::Cos, u, [](double v) { return std::cos(v); }); }
Expr tan(const Expr& u) { return unary(Op::Tan, u, [](double v) { return std::tan(v); }); }
Expr atan(const Expr& u) { return unary(Op::Atan, u, [](double v) { return std::atan(v); }); }
Expr sqrt(const Expr& u) { return unary(Op::Sqrt, u, [](double v) { return v >= 0 ? std::sqrt(v) : NAN; }); }
Expr bracket(const Expr& u) { return unary(Op::Bracket, u, [](double v) { return std::sqrt(1.0 + v * v); }); }

Expr cutoff(const Expr& u, int order) {
  if (u.is_const()) {
    const double v = cutoff_value(u.const_value(), order);
    if (finite(v)) return Expr(v);
  }
  return Expr(make(Op::Cutoff, u.ptr(), nullptr, 0.0, order));
}

// --- complex pairs ---------------------------------------------------------

ComplexExpr operator+(const ComplexExpr& a, const ComplexExpr& b) { return {a.re + b.re, a.im + b.im}; }
ComplexExpr operator-(const ComplexExpr& a, const ComplexExpr& b) { return {a.re - b.re, a.im - b.im}; }
ComplexExpr operator*(const ComplexExpr& a, const ComplexExpr& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
ComplexExpr operator-(const ComplexExpr& a) { return {-a.re, -a.im}; }
ComplexExpr conj(const ComplexExpr& a) { return {a.re, -a.im}; }
ComplexExpr scale(const ComplexExpr& a, double re, double im) {
  return {Expr(re) * a.re - Expr(im) * a.im, Expr(re) * a.im + Expr(im) * a.re};
}

// --- structure -------------------------------------------------------------

bool depends_on(const Expr& e, Var v) {
  std::unordered_map<const Node*, bool> memo;
  std::function<bool(const NodePtr&)> rec = [&](const NodePtr& n) -> bool {
    if (!n) return false;
    if (n->op == Op::Variable) return n->var == v;
    if (n->op == Op::Const) return false;
    auto it = memo.find(n.get());
    if (it != memo.end()) return it->second;
    const bool r = rec(n->a) || rec(n->b);
    memo.emplace(n.get(), r);
    return r;
  };
  return rec(e.ptr());
}

bool depends_on(const ComplexExpr& e, Var v) { return depends_on(e.re, v) || depends_on(e.im, v); }

std::size_t node_count(const Expr& e) {
  std::unordered_set<const Node*> seen;
  std::function<void(const NodePtr&)> rec = [&](const NodePtr& n) {
    if (!n || !seen.insert(n.get()).second) return;
    rec(n->a);
    rec(n->b);
  };
  rec(e.ptr());
  return seen.size();
}

namespace {

Expr rebuild(const Node& n, const Expr& a, const Expr& b) {
  switch (n.op) {
    case Op::Const:
    case Op::Variable: break;
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Div: return a / b;
    case Op::Neg: return -a;
    case Op::Pow: return pow(a, n.value);
    case Op::Exp: return exp(a);
    case Op::Log: return log(a);
    case Op::Sin: return sin(a);
    case Op::Cos: return cos(a);
    case Op::Tan: return tan(a);
    case Op::Atan: return atan(a);
    case Op::Sqrt: return sqrt(a);
    case Op::Bracket: return bracket(a);
    case Op::Cutoff: return cutoff(a, n.order);
  }
  throw std::logic_error("rebuild: leaf node");
}

}  // namespace

Expr substitute(const Expr& e, const std::vector<std::pair<Var, Expr>>& map) {
  std::unordered_map<const Node*, Expr> memo;
  std::function<Expr(const NodePtr&)> rec = [&](const NodePtr& n) -> Expr {
    if (n->op == Op::Const) return Expr(n);
    if (n->op == Op::Variable) {
      for (const auto& [v, r] : map)
        if (v == n->var) return r;
      return Expr(n);
    }
    auto it = memo.find(n.get());
    if (it != memo.end()) return it->second;
    Expr a = rec(n->a);
    Expr b = n->b ? rec(n->b) : Expr(0.0);
    Expr r = rebuild(*n, a, b);
    memo.emplace(n.get(), r);
    return r;
  };
  return rec(e.ptr());
}

Expr substitute(const Expr& e, Var v, const Expr& replacement) { return substitute(e, {{v, replacement}}); }

ComplexExpr substitute(const ComplexExpr& e, Var v, const Expr& replacement) {
  return {substitute(e.re, v, replacement), substitute(e.im, v, replacement)};
}

ComplexExpr substitute(const ComplexExpr& e, const std::vector<std::pair<Var, Expr>>& map) {
  return {substitute(e.re, map), substitute(e.im, map)};
}

const char* var_name(Var v) {
  switch (v) {
    case Var::X: return "x";
    case Var::Y: return "y";
    case Var::Alpha: return "alpha";
    case Var::Beta: return "beta";
    case Var::Xi: return "xi";
    case Var::Eta: return "eta";
    case Var::I: return "i";
  }
  return "?";
}

std::optional<Var> var_from_name(std::string_view name) {
  for (Var v : {Var::X, Var::Y, Var::Alpha, Var::Beta, Var::Xi, Var::Eta})
    if (name == var_name(v)) return v;
  return std::nullopt;
}

}  // namespace bipdo::sym
