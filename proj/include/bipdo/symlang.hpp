// SPDX-License-Identifier: Apache-2.0
//
// Symbol mini-language: immutable expression DAGs over x, y, alpha, beta, xi, eta.
#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bipdo::sym {

enum class Var { X = 0, Y, Alpha, Beta, Xi, Eta, I };
inline constexpr int kNumRealVars = 6;

enum class Op {
  Const, Variable, Add, Sub, Mul, Div, Neg, Pow,
  Exp, Log, Sin, Cos, Tan, Atan, Sqrt, Bracket, Cutoff
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op = Op::Const;
  double value = 0.0;  // Const value, or the exponent of Pow
  Var var = Var::X;    // Variable
  int order = 0;       // derivative order of Cutoff
  NodePtr a, b;
};

/// Value-semantics handle to an immutable node. Constructors simplify constant subterms
/// whenever the folded result is finite.
class Expr {
 public:
  Expr() : Expr(0.0) {}
  Expr(double c);  // NOLINT: implicit on purpose so that 2*e reads naturally
  explicit Expr(NodePtr node) : node_(std::move(node)) {}
  static Expr variable(Var v);

  const Node& node() const { return *node_; }
  const NodePtr& ptr() const { return node_; }
  Op op() const { return node_->op; }
  bool is_const() const { return node_->op == Op::Const; }
  bool is_const(double v) const { return is_const() && node_->value == v; }
  double const_value() const { return node_->value; }
  Expr lhs() const { return Expr(node_->a); }
  Expr rhs() const { return Expr(node_->b); }

 private:
  NodePtr node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, double exponent);
Expr exp(const Expr& u);
Expr log(const Expr& u);
Expr sin(const Expr& u);
Expr cos(const Expr& u);
Expr tan(const Expr& u);
Expr atan(const Expr& u);
Expr sqrt(const Expr& u);
Expr bracket(const Expr& u);
/// Smooth even bump: 1 on [-1,1], 0 outside [-2,2]; `order` selects a derivative.
Expr cutoff(const Expr& u, int order = 0);

inline Expr x() { return Expr::variable(Var::X); }
inline Expr y() { return Expr::variable(Var::Y); }
inline Expr alpha() { return Expr::variable(Var::Alpha); }
inline Expr beta() { return Expr::variable(Var::Beta); }
inline Expr xi() { return Expr::variable(Var::Xi); }
inline Expr eta() { return Expr::variable(Var::Eta); }

/// Complex symbol as a pair of real expressions.
struct ComplexExpr {
  Expr re;
  Expr im;
  ComplexExpr() = default;
  ComplexExpr(Expr r) : re(std::move(r)), im(0.0) {}  // NOLINT
  ComplexExpr(Expr r, Expr i) : re(std::move(r)), im(std::move(i)) {}
  bool is_real() const { return im.is_const(0.0); }
};

ComplexExpr operator+(const ComplexExpr& a, const ComplexExpr& b);
ComplexExpr operator-(const ComplexExpr& a, const ComplexExpr& b);
ComplexExpr operator*(const ComplexExpr& a, const ComplexExpr& b);
ComplexExpr operator-(const ComplexExpr& a);
ComplexExpr conj(const ComplexExpr& a);
/// Multiplies by the complex constant re + i*im.
ComplexExpr scale(const ComplexExpr& a, double re, double im);

// --- structure -------------------------------------------------------------

bool depends_on(const Expr& e, Var v);
bool depends_on(const ComplexExpr& e, Var v);
std::size_t node_count(const Expr& e);
Expr substitute(const Expr& e, Var v, const Expr& replacement);
ComplexExpr substitute(const ComplexExpr& e, Var v, const Expr& replacement);
/// Simultaneous substitution of several variables.
Expr substitute(const Expr& e, const std::vector<std::pair<Var, Expr>>& map);
ComplexExpr substitute(const ComplexExpr& e, const std::vector<std::pair<Var, Expr>>& map);

// --- differentiation -------------------------------------------------------

Expr differentiate(const Expr& e, Var v, int order = 1);
ComplexExpr differentiate(const ComplexExpr& e, Var v, int order = 1);

enum class Direction { DAlpha, DBeta, DBetaMinusAlpha, DAlphaMinusBeta };
Expr directional_derivative(const Expr& e, Direction d, int order = 1);
ComplexExpr directional_derivative(const ComplexExpr& e, Direction d, int order = 1);

// --- parsing and printing --------------------------------------------------

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, std::string message, std::vector<std::string> expected);
  std::size_t position() const { return position_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string message_;
  std::vector<std::string> expected_;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses and validates a real expression.
Expr parse(std::string_view source);
/// Parses an expression that may use the imaginary unit `i` or literals like `2i`.
ComplexExpr parse_complex(std::string_view source);
/// Parses without validation; the result may contain Var::I.
Expr parse_unchecked(std::string_view source, bool allow_imaginary);

std::string to_string(const Expr& e);
std::string to_string(const ComplexExpr& e);
const char* var_name(Var v);
std::optional<Var> var_from_name(std::string_view name);

// --- validation ------------------------------------------------------------

/// Returns a description of the first unguarded operation, or nothing if the expression
/// evaluates to a finite number everywhere.
std::optional<std::string> validate(const Expr& e);
void require_valid(const Expr& e);
void require_valid(const ComplexExpr& e);

/// Rewrites an expression containing Var::I into real and imaginary parts.
ComplexExpr complexify(const Expr& e);

// --- evaluation ------------------------------------------------------------

using Point = std::array<double, kNumRealVars>;

inline Point make_point(double x, double alpha, double beta) {
  Point p{};
  p[static_cast<int>(Var::X)] = x;
  p[static_cast<int>(Var::Alpha)] = alpha;
  p[static_cast<int>(Var::Beta)] = beta;
  return p;
}

double cutoff_value(double u, int order);

/// Flattened, common-subexpression-free evaluation tape for one or more outputs.
class CompiledExpr {
 public:
  explicit CompiledExpr(const std::vector<Expr>& outputs);
  explicit CompiledExpr(const Expr& e) : CompiledExpr(std::vector<Expr>{e}) {}
  explicit CompiledExpr(const ComplexExpr& e) : CompiledExpr(std::vector<Expr>{e.re, e.im}) {}

  std::size_t num_outputs() const { return outputs_.size(); }
  std::size_t tape_size() const { return tape_.size(); }
  /// Thread-safe; `out` receives num_outputs() values.
  void eval(const Point& p, double* out) const;
  double eval1(const Point& p) const;

  struct Instr {
    Op op;
    int a = -1, b = -1;
    double value = 0.0;
    int var = 0;
    int order = 0;
  };

 private:
  std::vector<Instr> tape_;
  std::vector<int> outputs_;
};

/// Direct recursive evaluation; the reference used to test the tape.
double eval_recursive(const Expr& e, const Point& p);

}  // namespace bipdo::sym
