#include "curvsym/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstring>

namespace curvsym {

ExprPtr e_num(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Number;
  e->number = v;
  return e;
}

ExprPtr e_coord(int slot) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Coord;
  e->slot = slot;
  return e;
}

ExprPtr e_param(int slot) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Param;
  e->slot = slot;
  return e;
}

static ExprPtr binary(ExprKind k, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

ExprPtr e_add(ExprPtr a, ExprPtr b) { return binary(ExprKind::Add, std::move(a), std::move(b)); }
ExprPtr e_sub(ExprPtr a, ExprPtr b) { return binary(ExprKind::Sub, std::move(a), std::move(b)); }
ExprPtr e_mul(ExprPtr a, ExprPtr b) { return binary(ExprKind::Mul, std::move(a), std::move(b)); }
ExprPtr e_div(ExprPtr a, ExprPtr b) { return binary(ExprKind::Div, std::move(a), std::move(b)); }

ExprPtr e_neg(ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Neg;
  e->a = std::move(a);
  return e;
}

ExprPtr e_pow(ExprPtr a, int k) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::PowInt;
  e->a = std::move(a);
  e->exponent = k;
  return e;
}

ExprPtr e_call(Func1 f, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Call;
  e->func = f;
  e->a = std::move(a);
  return e;
}

namespace {

const std::array<std::pair<const char*, Func1>, 7> kFunctions = {{
    {"exp", Func1::Exp},
    {"log", Func1::Log},
    {"sin", Func1::Sin},
    {"cos", Func1::Cos},
    {"sinh", Func1::Sinh},
    {"cosh", Func1::Cosh},
    {"sqrt", Func1::Sqrt},
}};

// Recursive-descent parser over a single line fragment.
class Parser {
public:
  Parser(std::string_view text, const std::vector<std::string>& coords,
         const std::vector<std::string>& params, int line, int col_offset)
      : text_(text), coords_(coords), params_(params), line_(line), col0_(col_offset) {}

  ExprPtr run() {
    ExprPtr e = expression();
    skip_ws();
    if (pos_ != text_.size()) fail(pos_, "unexpected trailing input");
    return e;
  }

private:
  std::string_view text_;
  const std::vector<std::string>& coords_;
  const std::vector<std::string>& params_;
  int line_;
  int col0_;
  size_t pos_ = 0;

  [[noreturn]] void fail(size_t at, const std::string& msg) {
    throw ParseError(line_, col0_ + int(at) + 1, msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ExprPtr expression() {
    ExprPtr e = term();
    for (;;) {
      if (eat('+')) {
        e = e_add(std::move(e), term());
      } else if (eat('-')) {
        e = e_sub(std::move(e), term());
      } else {
        return e;
      }
    }
  }

  ExprPtr term() {
    ExprPtr e = unary();
    for (;;) {
      if (eat('*')) {
        e = e_mul(std::move(e), unary());
      } else if (eat('/')) {
        e = e_div(std::move(e), unary());
      } else {
        return e;
      }
    }
  }

  ExprPtr unary() {
    if (eat('-')) return e_neg(unary());
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (eat('^')) {
      size_t at = pos_;
      skip_ws();
      at = pos_;
      bool neg = false;
      if (pos_ < text_.size() && text_[pos_] == '-') {
        neg = true;
        ++pos_;
      }
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == start) fail(at, "expected integer exponent after '^'");
      int k = 0;
      std::from_chars(text_.data() + start, text_.data() + pos_, k);
      base = e_pow(std::move(base), neg ? -k : k);
    }
    return base;
  }

  ExprPtr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail(pos_, "unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = expression();
      if (!eat(')')) fail(pos_, "expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(pos_, std::string("unexpected character '") + c + "'");
  }

  ExprPtr number() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    // scientific notation
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = save;  // 'e' belongs to an identifier-like token; not ours
      }
    }
    double v = 0.0;
    std::string tok(text_.substr(start, pos_ - start));
    char* end = nullptr;
    v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) fail(start, "malformed number '" + tok + "'");
    return e_num(v);
  }

  ExprPtr identifier() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    for (const auto& [fname, f] : kFunctions) {
      if (name == fname) {
        if (!eat('(')) fail(pos_, "expected '(' after function '" + name + "'");
        ExprPtr arg = expression();
        if (!eat(')')) fail(pos_, "expected ')'");
        return e_call(f, std::move(arg));
      }
    }
    for (size_t i = 0; i < coords_.size(); ++i)
      if (coords_[i] == name) return e_coord(int(i));
    for (size_t i = 0; i < params_.size(); ++i)
      if (params_[i] == name) return e_param(int(i));
    fail(start, "undeclared identifier '" + name + "'");
  }
};

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

bool is_function_name(const std::string& ident) {
  for (const auto& [fname, f] : kFunctions)
    if (ident == fname) return true;
  return false;
}

ExprPtr parse_expression(std::string_view text, const std::vector<std::string>& coords,
                         const std::vector<std::string>& params, int line, int col_offset) {
  return Parser(text, coords, params, line, col_offset).run();
}

std::string expr_to_text(const Expr& e, const std::vector<std::string>& coords,
                         const std::vector<std::string>& params) {
  switch (e.kind) {
    case ExprKind::Number:
      return format_number(e.number);
    case ExprKind::Coord:
      return coords[e.slot];
    case ExprKind::Param:
      return params[e.slot];
    case ExprKind::Add:
      return "(" + expr_to_text(*e.a, coords, params) + " + " +
             expr_to_text(*e.b, coords, params) + ")";
    case ExprKind::Sub:
      return "(" + expr_to_text(*e.a, coords, params) + " - " +
             expr_to_text(*e.b, coords, params) + ")";
    case ExprKind::Mul:
      return "(" + expr_to_text(*e.a, coords, params) + "*" +
             expr_to_text(*e.b, coords, params) + ")";
    case ExprKind::Div:
      return "(" + expr_to_text(*e.a, coords, params) + "/" +
             expr_to_text(*e.b, coords, params) + ")";
    case ExprKind::Neg:
      return "(-" + expr_to_text(*e.a, coords, params) + ")";
    case ExprKind::PowInt:
      return "(" + expr_to_text(*e.a, coords, params) + ")^" + std::to_string(e.exponent);
    case ExprKind::Call: {
      const char* name = "exp";
      switch (e.func) {
        case Func1::Exp: name = "exp"; break;
        case Func1::Log: name = "log"; break;
        case Func1::Sin: name = "sin"; break;
        case Func1::Cos: name = "cos"; break;
        case Func1::Sinh: name = "sinh"; break;
        case Func1::Cosh: name = "cosh"; break;
        case Func1::Sqrt: name = "sqrt"; break;
      }
      return std::string(name) + "(" + expr_to_text(*e.a, coords, params) + ")";
    }
  }
  return "0";
}

}  // namespace curvsym
