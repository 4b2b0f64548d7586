#pragma once

#include <string>
#include <vector>

#include "supergeo/dsl/lexer.hpp"
#include "supergeo/superfunction.hpp"

namespace supergeo::dsl {

/// Expression tree of the DSL. Literals are nonnegative; minus is `neg`.
struct Expr {
  enum class Kind { number, even_var, odd_var, add, sub, mul, neg, pow };

  Kind kind = Kind::number;
  Rational value;
  std::size_t index = 0;  // 0-based variable index
  unsigned exponent = 0;
  std::vector<Expr> kids;
  Span span;

  static Expr number(Rational r) {
    Expr e;
    e.value = std::move(r);
    return e;
  }
  static Expr var(Kind k, std::size_t i) {
    Expr e;
    e.kind = k;
    e.index = i;
    return e;
  }
  static Expr binary(Kind k, Expr a, Expr b) {
    Expr e;
    e.kind = k;
    e.kids.push_back(std::move(a));
    e.kids.push_back(std::move(b));
    return e;
  }
  static Expr negate(Expr a) {
    Expr e;
    e.kind = Kind::neg;
    e.kids.push_back(std::move(a));
    return e;
  }
  static Expr power(Expr a, unsigned k) {
    Expr e;
    e.kind = Kind::pow;
    e.exponent = k;
    e.kids.push_back(std::move(a));
    return e;
  }

  /// Structural equality; spans are ignored.
  friend bool operator==(const Expr& a, const Expr& b) {
    return a.kind == b.kind && a.value == b.value && a.index == b.index && a.exponent == b.exponent &&
           a.kids == b.kids;
  }
};

inline int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::add:
    case Expr::Kind::sub:
      return 1;
    case Expr::Kind::mul:
      return 2;
    case Expr::Kind::neg:
      return 3;
    case Expr::Kind::pow:
      return 4;
    default:
      return 5;
  }
}

/// Minimal-parenthesis rendering that reparses to the same tree.
inline std::string print_expr(const Expr& e) {
  auto wrap = [](const Expr& k, bool paren) { return paren ? "(" + print_expr(k) + ")" : print_expr(k); };
  switch (e.kind) {
    case Expr::Kind::number:
      return to_string(e.value);
    case Expr::Kind::even_var:
      return "u" + std::to_string(e.index + 1);
    case Expr::Kind::odd_var:
      return "th" + std::to_string(e.index + 1);
    case Expr::Kind::add:
    case Expr::Kind::sub:
      return wrap(e.kids[0], precedence(e.kids[0]) < 1) + (e.kind == Expr::Kind::add ? " + " : " - ") +
             wrap(e.kids[1], precedence(e.kids[1]) < 2);
    case Expr::Kind::mul:
      return wrap(e.kids[0], precedence(e.kids[0]) < 2) + "*" + wrap(e.kids[1], precedence(e.kids[1]) < 3);
    case Expr::Kind::neg:
      return "-" + wrap(e.kids[0], precedence(e.kids[0]) < 3);
    case Expr::Kind::pow: {
      const Expr& b = e.kids[0];
      const bool fraction = b.kind == Expr::Kind::number && b.value.get_den() != 1;
      return wrap(b, precedence(b) < 5 || fraction) + "^" + std::to_string(e.exponent);
    }
  }
  return {};
}

/// Evaluates an expression on a domain, enforcing the parity rule for `^`.
inline SuperFunction evaluate(const Expr& e, const SuperDomain& d) {
  switch (e.kind) {
    case Expr::Kind::number:
      return SuperFunction::constant(d, e.value);
    case Expr::Kind::even_var:
      if (e.index >= d.m()) throw ParseError("u" + std::to_string(e.index + 1) + " is not a coordinate of " + d.space.id, e.span.line, e.span.col);
      return SuperFunction::even_coordinate(d, e.index);
    case Expr::Kind::odd_var:
      if (e.index >= d.n()) throw ParseError("th" + std::to_string(e.index + 1) + " is not a coordinate of " + d.space.id, e.span.line, e.span.col);
      return SuperFunction::odd_coordinate(d, e.index);
    case Expr::Kind::add:
      return evaluate(e.kids[0], d) + evaluate(e.kids[1], d);
    case Expr::Kind::sub:
      return evaluate(e.kids[0], d) - evaluate(e.kids[1], d);
    case Expr::Kind::mul:
      return sf_mul(evaluate(e.kids[0], d), evaluate(e.kids[1], d));
    case Expr::Kind::neg:
      return -evaluate(e.kids[0], d);
    case Expr::Kind::pow: {
      SuperFunction base = evaluate(e.kids[0], d);
      if (e.exponent >= 2 && !has_parity(base, Parity::even)) {
        throw ParseError("parity error: power of a non-even expression", e.span.line, e.span.col);
      }
      SuperFunction out = SuperFunction::constant(d, Rational(1));
      for (unsigned i = 0; i < e.exponent; ++i) out = sf_mul(out, base);
      return out;
    }
  }
  return SuperFunction(d);
}

}  // namespace supergeo::dsl
