#pragma once

// Scalar expression trees for metric components.  Expressions are immutable
// after construction and shared via shared_ptr, so metric fields can be copied
// cheaply and evaluated concurrently.  The grammar covers + - * /, integer ^,
// unary -, exp, log, sin, cos, sinh, cosh, sqrt, numeric literals, declared
// coordinates and declared parameters.

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvsym/jets.hpp"

namespace curvsym {

class ParseError : public std::runtime_error {
public:
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

enum class ExprKind { Number, Coord, Param, Add, Sub, Mul, Div, Neg, PowInt, Call };

enum class Func1 { Exp, Log, Sin, Cos, Sinh, Cosh, Sqrt };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind;
  double number = 0.0;  // Number
  int slot = -1;        // Coord / Param index
  int exponent = 0;     // PowInt
  Func1 func = Func1::Exp;
  ExprPtr a, b;
};

// -- builders ------------------------------------------------------------

ExprPtr e_num(double v);
ExprPtr e_coord(int slot);
ExprPtr e_param(int slot);
ExprPtr e_add(ExprPtr a, ExprPtr b);
ExprPtr e_sub(ExprPtr a, ExprPtr b);
ExprPtr e_mul(ExprPtr a, ExprPtr b);
ExprPtr e_div(ExprPtr a, ExprPtr b);
ExprPtr e_neg(ExprPtr a);
ExprPtr e_pow(ExprPtr a, int k);
ExprPtr e_call(Func1 f, ExprPtr a);

/// Parses one scalar expression.  `coords` and `params` supply the declared
/// identifiers; positions in diagnostics are reported as (line, col_offset+i).
ExprPtr parse_expression(std::string_view text,
                         const std::vector<std::string>& coords,
                         const std::vector<std::string>& params,
                         int line = 1, int col_offset = 0);

/// Renders an expression back to parseable text (fully parenthesized).
std::string expr_to_text(const Expr& e,
                         const std::vector<std::string>& coords,
                         const std::vector<std::string>& params);

bool is_function_name(const std::string& ident);

// -- evaluation ------------------------------------------------------------

namespace detail {

template <class T>
T lift_constant(double v, const T& like) {
  if constexpr (std::is_same_v<T, double>) {
    (void)like;
    return v;
  } else {
    return T(v, int(like.d.size()));
  }
}

}  // namespace detail

template <class T>
T eval_expr(const Expr& e, std::span<const T> coords, std::span<const double> params) {
  using std::exp;
  using std::log;
  using std::sin;
  using std::cos;
  using std::sinh;
  using std::cosh;
  using std::sqrt;
  switch (e.kind) {
    case ExprKind::Number:
      return detail::lift_constant<T>(e.number, coords[0]);
    case ExprKind::Coord:
      return coords[e.slot];
    case ExprKind::Param:
      return detail::lift_constant<T>(params[e.slot], coords[0]);
    case ExprKind::Add:
      return eval_expr(*e.a, coords, params) + eval_expr(*e.b, coords, params);
    case ExprKind::Sub:
      return eval_expr(*e.a, coords, params) - eval_expr(*e.b, coords, params);
    case ExprKind::Mul:
      return eval_expr(*e.a, coords, params) * eval_expr(*e.b, coords, params);
    case ExprKind::Div: {
      T num = eval_expr(*e.a, coords, params);
      T den = eval_expr(*e.b, coords, params);
      if constexpr (std::is_same_v<T, double>) {
        if (den == 0.0) throw EvalError("division by zero");
      }
      return num / den;
    }
    case ExprKind::Neg:
      return -eval_expr(*e.a, coords, params);
    case ExprKind::PowInt:
      return pow_int(eval_expr(*e.a, coords, params), e.exponent);
    case ExprKind::Call: {
      T u = eval_expr(*e.a, coords, params);
      if constexpr (std::is_same_v<T, double>) {
        if (e.func == Func1::Log && u <= 0.0) throw EvalError("log of non-positive value");
        if (e.func == Func1::Sqrt && u < 0.0) throw EvalError("sqrt of negative value");
      }
      switch (e.func) {
        case Func1::Exp: return exp(u);
        case Func1::Log: return log(u);
        case Func1::Sin: return sin(u);
        case Func1::Cos: return cos(u);
        case Func1::Sinh: return sinh(u);
        case Func1::Cosh: return cosh(u);
        case Func1::Sqrt: return sqrt(u);
      }
      break;
    }
  }
  throw EvalError("corrupt expression node");
}

}  // namespace curvsym
