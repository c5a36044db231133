// SPDX-License-Identifier: Apache-2.0
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "bipdo/symlang.hpp"

namespace bipdo::sym {

ParseError::ParseError(std::size_t position, std::string message, std::vector<std::string> expected)
    : std::runtime_error([&] {
        std::string w = "parse error at offset " + std::to_string(position) + ": " + message;
        if (!expected.empty()) {
          w += " (expected ";
          for (std::size_t i = 0; i < expected.size(); ++i) w += (i ? ", " : "") + ("'" + expected[i] + "'");
          w += ")";
        }
        return w;
      }()),
      position_(position),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { Number, Imag, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
  double number = 0.0;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) return {Tok::End, start, ""};
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && pos_ + 1 < src_.size() &&
                                                        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))))
      return number(start);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
      return {Tok::Ident, start, std::string(src_.substr(start, pos_ - start))};
    }
    ++pos_;
    switch (c) {
      case '+': return {Tok::Plus, start, "+"};
      case '-': return {Tok::Minus, start, "-"};
      case '*': return {Tok::Star, start, "*"};
      case '/': return {Tok::Slash, start, "/"};
      case '^': return {Tok::Caret, start, "^"};
      case '(': return {Tok::LParen, start, "("};
      case ')': return {Tok::RParen, start, ")"};
      case ',': return {Tok::Comma, start, ","};
      default: break;
    }
    throw ParseError(start, std::string("unexpected character '") + c + "'", {});
  }

 private:
  Token number(std::size_t start) {
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        digits();
      else
        pos_ = save;
    }
    const std::string text(src_.substr(start, pos_ - start));
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw ParseError(start, "malformed number '" + text + "'", {});
    if (pos_ < src_.size() && src_[pos_] == 'i' && (pos_ + 1 >= src_.size() || !ident_char(src_[pos_ + 1]))) {
      ++pos_;
      return {Tok::Imag, start, text + "i", value};
    }
    return {Tok::Number, start, text, value};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::string_view src, bool allow_imaginary) : lexer_(src), allow_imaginary_(allow_imaginary) {
    advance();
  }

  Expr parse_all() {
    Expr e = expr();
    if (tok_.kind != Tok::End)
      throw ParseError(tok_.pos, "unexpected '" + tok_.text + "'", {"+", "-", "*", "/", "end of input"});
    return e;
  }

 private:
  void advance() { tok_ = lexer_.next(); }

  void expect(Tok kind, const char* text) {
    if (tok_.kind != kind)
      throw ParseError(tok_.pos, tok_.kind == Tok::End ? "unexpected end of input" : "unexpected '" + tok_.text + "'",
                       {text});
    advance();
  }

  Expr expr() {
    Expr lhs = term();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      const bool plus = tok_.kind == Tok::Plus;
      advance();
      Expr rhs = term();
      lhs = plus ? lhs + rhs : lhs - rhs;
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
      const bool mul = tok_.kind == Tok::Star;
      advance();
      Expr rhs = unary();
      lhs = mul ? lhs * rhs : lhs / rhs;
    }
    return lhs;
  }

  Expr unary() {
    if (tok_.kind == Tok::Minus) {
      advance();
      return -unary();
    }
    if (tok_.kind == Tok::Plus) {
      advance();
      return unary();
    }
    return power();
  }

  Expr power() {
    Expr b = base();
    if (tok_.kind != Tok::Caret) return b;
    advance();
    return pow(b, exponent());
  }

  double exponent() {
    const std::size_t pos = tok_.pos;
    double sign = 1.0;
    if (tok_.kind == Tok::Minus || tok_.kind == Tok::Plus) {
      sign = tok_.kind == Tok::Minus ? -1.0 : 1.0;
      advance();
    }
    if (tok_.kind == Tok::Number) {
      const double v = tok_.number;
      advance();
      return sign * v;
    }
    if (tok_.kind == Tok::LParen) {
      advance();
      Expr e = expr();
      expect(Tok::RParen, ")");
      if (!e.is_const()) throw ParseError(pos, "exponent must be a constant expression", {});
      return sign * e.const_value();
    }
    throw ParseError(tok_.pos, "invalid exponent", {"number", "("});
  }

  Expr base() {
    switch (tok_.kind) {
      case Tok::Number: {
        const double v = tok_.number;
        advance();
        return Expr(v);
      }
      case Tok::Imag: {
        if (!allow_imaginary_)
          throw ParseError(tok_.pos, "imaginary literal '" + tok_.text + "' in a real expression", {});
        const double v = tok_.number;
        advance();
        return Expr(v) * Expr::variable(Var::I);
      }
      case Tok::LParen: {
        advance();
        Expr e = expr();
        expect(Tok::RParen, ")");
        return e;
      }
      case Tok::Ident: return identifier();
      case Tok::End: throw ParseError(tok_.pos, "unexpected end of input", {"number", "identifier", "("});
      default: throw ParseError(tok_.pos, "unexpected '" + tok_.text + "'", {"number", "identifier", "("});
    }
  }

  Expr identifier() {
    const Token id = tok_;
    advance();
    if (auto v = var_from_name(id.text)) return Expr::variable(*v);
    if (id.text == "i") {
      if (!allow_imaginary_) throw ParseError(id.pos, "imaginary unit 'i' in a real expression", {});
      return Expr::variable(Var::I);
    }
    if (id.text == "pi") return Expr(std::numbers::pi);

    int cutoff_order = -1;
    if (id.text == "cutoff") {
      cutoff_order = 0;
    } else if (id.text.rfind("cutoff_d", 0) == 0 && id.text.size() > 8) {
      cutoff_order = 0;
      for (std::size_t i = 8; i < id.text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(id.text[i]))) throw ParseError(id.pos, "unknown identifier '" + id.text + "'", {});
        cutoff_order = cutoff_order * 10 + (id.text[i] - '0');
      }
    }
    static const char* const kFunctions[] = {"exp", "log", "sin", "cos", "tan", "atan", "sqrt", "bracket"};
    bool known = cutoff_order >= 0;
    for (const char* f : kFunctions) known = known || id.text == f;
    if (!known) throw ParseError(id.pos, "unknown identifier '" + id.text + "'", {});

    expect(Tok::LParen, "(");
    std::vector<Expr> args{expr()};
    while (tok_.kind == Tok::Comma) {
      advance();
      args.push_back(expr());
    }
    expect(Tok::RParen, ")");
    if (args.size() != 1)
      throw ParseError(id.pos, "function '" + id.text + "' takes exactly one argument", {});
    const Expr& u = args[0];
    if (cutoff_order >= 0) return cutoff(u, cutoff_order);
    if (id.text == "exp") return exp(u);
    if (id.text == "log") return log(u);
    if (id.text == "sin") return sin(u);
    if (id.text == "cos") return cos(u);
    if (id.text == "tan") return tan(u);
    if (id.text == "atan") return atan(u);
    if (id.text == "sqrt") return sqrt(u);
    return bracket(u);
  }

  Lexer lexer_;
  Token tok_{Tok::End, 0, ""};
  bool allow_imaginary_;
};

// --- printing --------------------------------------------------------------

std::string number_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int precedence(const Node& n) {
  switch (n.op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    default: return 5;
  }
}

const char* function_name(Op op) {
  switch (op) {
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Tan: return "tan";
    case Op::Atan: return "atan";
    case Op::Sqrt: return "sqrt";
    case Op::Bracket: return "bracket";
    default: return nullptr;
  }
}

void print(const Node& n, std::string& out);

void print_at_least(const Node& n, int min_prec, std::string& out) {
  if (precedence(n) < min_prec) {
    out += '(';
    print(n, out);
    out += ')';
  } else {
    print(n, out);
  }
}

void print(const Node& n, std::string& out) {
  switch (n.op) {
    case Op::Const:
      if (n.value < 0 || (n.value == 0 && std::signbit(n.value)))
        out += "(-" + number_text(-n.value) + ")";
      else
        out += number_text(n.value);
      return;
    case Op::Variable: out += var_name(n.var); return;
    case Op::Add:
    case Op::Sub:
      print_at_least(*n.a, 1, out);
      out += n.op == Op::Add ? " + " : " - ";
      print_at_least(*n.b, 2, out);
      return;
    case Op::Mul:
    case Op::Div:
      print_at_least(*n.a, 2, out);
      out += n.op == Op::Mul ? "*" : "/";
      print_at_least(*n.b, 3, out);
      return;
    case Op::Neg:
      out += "-";
      print_at_least(*n.a, 4, out);
      return;
    case Op::Pow:
      print_at_least(*n.a, 5, out);
      out += "^";
      if (n.value < 0)
        out += "(-" + number_text(-n.value) + ")";
      else
        out += number_text(n.value);
      return;
    case Op::Cutoff:
      out += n.order == 0 ? std::string("cutoff") : "cutoff_d" + std::to_string(n.order);
      out += '(';
      print(*n.a, out);
      out += ')';
      return;
    default:
      out += function_name(n.op);
      out += '(';
      print(*n.a, out);
      out += ')';
      return;
  }
}

}  // namespace

Expr parse_unchecked(std::string_view source, bool allow_imaginary) {
  return Parser(source, allow_imaginary).parse_all();
}

Expr parse(std::string_view source) {
  Expr e = parse_unchecked(source, false);
  require_valid(e);
  return e;
}

ComplexExpr parse_complex(std::string_view source) {
  ComplexExpr c = complexify(parse_unchecked(source, true));
  require_valid(c);
  return c;
}

std::string to_string(const Expr& e) {
  std::string out;
  print(e.node(), out);
  return out;
}

std::string to_string(const ComplexExpr& e) {
  if (e.is_real()) return to_string(e.re);
  return "(" + to_string(e.re) + ") + i*(" + to_string(e.im) + ")";
}

}  // namespace bipdo::sym
