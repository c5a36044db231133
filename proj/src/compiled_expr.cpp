// SPDX-License-Identifier: Apache-2.0
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <tuple>
#include <unordered_map>

#include "bipdo/symlang.hpp"

namespace bipdo::sym {
namespace {

double apply_unary(Op op, double a, int order) {
  switch (op) {
    case Op::Neg: return -a;
    case Op::Exp: return std::exp(a);
    case Op::Log: return std::log(a);
    case Op::Sin: return std::sin(a);
    case Op::Cos: return std::cos(a);
    case Op::Tan: return std::tan(a);
    case Op::Atan: return std::atan(a);
    case Op::Sqrt: return std::sqrt(a);
    case Op::Bracket: return std::sqrt(1.0 + a * a);
    case Op::Cutoff: return cutoff_value(a, order);
    default: return NAN;
  }
}

double apply_pow(double a, double p) {
  if (p == 2.0) return a * a;
  if (p == -1.0) return 1.0 / a;
  return std::pow(a, p);
}

}  // namespace

CompiledExpr::CompiledExpr(const std::vector<Expr>& outputs) {
  using Key = std::tuple<int, std::uint64_t, int, int, int, int>;
  std::map<Key, int> slots;
  std::unordered_map<const Node*, int> seen;

  std::function<int(const NodePtr&)> emit = [&](const NodePtr& p) -> int {
    auto it = seen.find(p.get());
    if (it != seen.end()) return it->second;
    const Node& n = *p;
    Instr ins{n.op};
    ins.value = n.value;
    ins.var = static_cast<int>(n.var);
    ins.order = n.order;
    if (n.a) ins.a = emit(n.a);
    if (n.b) ins.b = emit(n.b);
    const bool uses_value = n.op == Op::Const || n.op == Op::Pow;
    const bool uses_var = n.op == Op::Variable;
    const Key key{static_cast<int>(n.op), uses_value ? std::bit_cast<std::uint64_t>(n.value) : 0,
                  uses_var ? ins.var : 0, ins.order, ins.a, ins.b};
    auto [slot, inserted] = slots.emplace(key, static_cast<int>(tape_.size()));
    if (inserted) tape_.push_back(ins);
    seen.emplace(p.get(), slot->second);
    return slot->second;
  };
  for (const auto& e : outputs) outputs_.push_back(emit(e.ptr()));
}

void CompiledExpr::eval(const Point& p, double* out) const {
  thread_local std::vector<double> reg;
  if (reg.size() < tape_.size()) reg.resize(tape_.size());
  for (std::size_t i = 0; i < tape_.size(); ++i) {
    const Instr& ins = tape_[i];
    double v;
    switch (ins.op) {
      case Op::Const: v = ins.value; break;
      case Op::Variable: v = ins.var < kNumRealVars ? p[ins.var] : NAN; break;
      case Op::Add: v = reg[ins.a] + reg[ins.b]; break;
      case Op::Sub: v = reg[ins.a] - reg[ins.b]; break;
      case Op::Mul: v = reg[ins.a] * reg[ins.b]; break;
      case Op::Div: v = reg[ins.a] / reg[ins.b]; break;
      case Op::Pow: v = apply_pow(reg[ins.a], ins.value); break;
      default: v = apply_unary(ins.op, reg[ins.a], ins.order); break;
    }
    reg[i] = v;
  }
  for (std::size_t k = 0; k < outputs_.size(); ++k) out[k] = reg[outputs_[k]];
}

double CompiledExpr::eval1(const Point& p) const {
  double v[2] = {0.0, 0.0};
  if (outputs_.size() > 2) {
    std::vector<double> all(outputs_.size());
    eval(p, all.data());
    return all[0];
  }
  eval(p, v);
  return v[0];
}

double eval_recursive(const Expr& e, const Point& p) {
  const Node& n = e.node();
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Variable: return n.var == Var::I ? NAN : p[static_cast<int>(n.var)];
    case Op::Add: return eval_recursive(e.lhs(), p) + eval_recursive(e.rhs(), p);
    case Op::Sub: return eval_recursive(e.lhs(), p) - eval_recursive(e.rhs(), p);
    case Op::Mul: return eval_recursive(e.lhs(), p) * eval_recursive(e.rhs(), p);
    case Op::Div: return eval_recursive(e.lhs(), p) / eval_recursive(e.rhs(), p);
    case Op::Pow: return std::pow(eval_recursive(e.lhs(), p), n.value);
    default: return apply_unary(n.op, eval_recursive(e.lhs(), p), n.order);
  }
}

}  // namespace bipdo::sym
