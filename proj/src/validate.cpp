// SPDX-License-Identifier: Apache-2.0
//
// Interval range analysis proving that an expression is finite on all of R^6.
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "bipdo/symlang.hpp"

namespace bipdo::sym {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed hull [lo, hi] plus strictness flags; pos means "> 0 everywhere", neg "< 0 everywhere".
struct Range {
  double lo = -kInf;
  double hi = kInf;
  bool pos = false;
  bool neg = false;

  bool nonzero() const { return pos || neg || lo > 0 || hi < 0; }
  bool positive() const { return pos || lo > 0; }
  bool nonnegative() const { return lo >= 0; }
};

Range make(double lo, double hi) {
  Range r{lo, hi, lo > 0, hi < 0};
  return r;
}

double mul0(double a, double b) {
  if (a == 0 || b == 0) return 0.0;
  return a * b;
}

Range add(const Range& a, const Range& b) {
  Range r = make(a.lo + b.lo, a.hi + b.hi);
  if (std::isnan(r.lo)) r.lo = -kInf;
  if (std::isnan(r.hi)) r.hi = kInf;
  r.pos = (a.positive() && b.nonnegative()) || (b.positive() && a.nonnegative()) || r.lo > 0;
  r.neg = (a.neg && b.hi <= 0) || (b.neg && a.hi <= 0) || r.hi < 0;
  return r;
}

Range negate(const Range& a) {
  Range r{-a.hi, -a.lo, a.neg || a.hi < 0, a.pos || a.lo > 0};
  return r;
}

Range mul(const Range& a, const Range& b) {
  const double c[4] = {mul0(a.lo, b.lo), mul0(a.lo, b.hi), mul0(a.hi, b.lo), mul0(a.hi, b.hi)};
  Range r = make(*std::min_element(c, c + 4), *std::max_element(c, c + 4));
  const bool ap = a.positive(), an = a.neg || a.hi < 0, bp = b.positive(), bn = b.neg || b.hi < 0;
  r.pos = r.pos || (ap && bp) || (an && bn);
  r.neg = r.neg || (ap && bn) || (an && bp);
  return r;
}

Range reciprocal(const Range& a) {
  // Caller guarantees a.nonzero().
  if (a.positive()) {
    Range r = make(a.hi == kInf ? 0.0 : 1.0 / a.hi, a.lo > 0 ? 1.0 / a.lo : kInf);
    r.pos = true;
    return r;
  }
  Range r = negate(reciprocal(negate(a)));
  return r;
}

Range monotone(const Range& a, double (*f)(double)) { return make(f(a.lo), f(a.hi)); }

bool is_integer(double p) { return std::floor(p) == p && std::isfinite(p); }

Range power(const Range& a, double p) {
  if (is_integer(p) && p > 0) {
    const long k = static_cast<long>(p);
    if (k % 2 == 1) {
      Range r = make(std::pow(a.lo, p), std::pow(a.hi, p));
      r.pos = a.positive();
      r.neg = a.neg || a.hi < 0;
      return r;
    }
    double lo = 0.0;
    if (a.lo > 0) lo = std::pow(a.lo, p);
    else if (a.hi < 0) lo = std::pow(a.hi, p);
    Range r = make(lo, std::max(std::pow(a.lo, p), std::pow(a.hi, p)));
    r.pos = a.nonzero();
    return r;
  }
  if (is_integer(p)) {  // negative integer; a is nonzero
    return reciprocal(power(a, -p));
  }
  // Non-integer exponent on a positive base.
  Range r = p > 0 ? make(std::pow(std::max(a.lo, 0.0), p), std::pow(a.hi, p))
                  : make(std::pow(a.hi, p), a.lo > 0 ? std::pow(a.lo, p) : kInf);
  r.pos = true;
  return r;
}

struct Validator {
  std::optional<std::string> error;
  std::unordered_map<const Node*, Range> memo;

  Range fail(const std::string& what, const Node& n) {
    if (!error) error = what + " in '" + to_string(Expr(std::make_shared<const Node>(n))) + "'";
    return Range{};
  }

  Range visit(const NodePtr& p) {
    auto it = memo.find(p.get());
    if (it != memo.end()) return it->second;
    Range r = compute(*p);
    memo.emplace(p.get(), r);
    return r;
  }

  Range compute(const Node& n) {
    switch (n.op) {
      case Op::Const:
        if (!std::isfinite(n.value)) return fail("non-finite constant", n);
        return make(n.value, n.value);
      case Op::Variable:
        if (n.var == Var::I) return fail("imaginary unit in a real expression", n);
        return Range{};
      case Op::Add: return add(visit(n.a), visit(n.b));
      case Op::Sub: return add(visit(n.a), negate(visit(n.b)));
      case Op::Neg: return negate(visit(n.a));
      case Op::Mul: return mul(visit(n.a), visit(n.b));
      case Op::Div: {
        const Range a = visit(n.a);
        const Range b = visit(n.b);
        if (!b.nonzero()) return fail("division by a denominator that may vanish", n);
        return mul(a, reciprocal(b));
      }
      case Op::Pow: {
        const Range a = visit(n.a);
        const double p = n.value;
        if (!std::isfinite(p)) return fail("non-finite exponent", n);
        if (is_integer(p) && p > 0) return power(a, p);
        if (is_integer(p)) {
          if (!a.nonzero()) return fail("negative power of a base that may vanish", n);
          return power(a, p);
        }
        if (!a.positive()) return fail("fractional power of a base that is not strictly positive", n);
        return power(a, p);
      }
      case Op::Exp: {
        const Range a = visit(n.a);
        Range r = make(std::exp(a.lo), std::exp(a.hi));
        r.pos = true;
        return r;
      }
      case Op::Log: {
        const Range a = visit(n.a);
        if (!a.positive()) return fail("logarithm of an argument that is not strictly positive", n);
        return make(a.lo > 0 ? std::log(a.lo) : -kInf, std::log(a.hi));
      }
      case Op::Sin:
      case Op::Cos: visit(n.a); return make(-1.0, 1.0);
      case Op::Tan: {
        const Range a = visit(n.a);
        const double h = std::numbers::pi / 2;
        if (!(a.lo > -h && a.hi < h)) return fail("tangent of an argument that may reach +-pi/2", n);
        return monotone(a, [](double v) { return std::tan(v); });
      }
      case Op::Atan: {
        Range r = monotone(visit(n.a), [](double v) { return std::atan(v); });
        const Range a = memo.at(n.a.get());
        r.pos = a.positive();
        r.neg = a.neg || a.hi < 0;
        return r;
      }
      case Op::Sqrt: {
        const Range a = visit(n.a);
        if (!a.positive()) return fail("square root of an argument that is not strictly positive", n);
        Range r = make(std::sqrt(std::max(a.lo, 0.0)), std::sqrt(a.hi));
        r.pos = true;
        return r;
      }
      case Op::Bracket: {
        const Range a = visit(n.a);
        const Range sq = power(a, 2.0);
        return make(std::sqrt(1.0 + sq.lo), std::sqrt(1.0 + sq.hi));
      }
      case Op::Cutoff:
        visit(n.a);
        if (n.order == 0) return make(0.0, 1.0);
        return Range{};
    }
    return Range{};
  }
};

}  // namespace

std::optional<std::string> validate(const Expr& e) {
  Validator v;
  v.visit(e.ptr());
  return v.error;
}

void require_valid(const Expr& e) {
  if (auto err = validate(e)) throw ValidationError(*err);
}

void require_valid(const ComplexExpr& e) {
  require_valid(e.re);
  require_valid(e.im);
}

}  // namespace bipdo::sym
