#pragma once

#include <set>
#include <string>
#include <string_view>

#include "supergeo/dsl/ast.hpp"
#include "supergeo/dsl/expr.hpp"

namespace supergeo::dsl {

struct ParseOptions {
  unsigned grid = kDefaultGrid;
};

struct ParsedFile {
  Ast ast;
  SymbolTable symbols;
};

/// Recursive-descent parser that resolves names as it goes.
class Parser {
 public:
  Parser(std::string_view src, ParseOptions opts = {}) : lex_(src), opts_(opts) {}

  ParsedFile parse_file() {
    ParsedFile out;
    while (lex_.peek().kind != Tok::end) out.ast.decls.push_back(parse_decl(out.symbols));
    return out;
  }

  /// A single expression followed by end of input.
  Expr parse_expression_only() {
    Expr e = parse_expr();
    if (lex_.peek().kind != Tok::end) fail("trailing input after expression", lex_.peek().span);
    return e;
  }

 private:
  [[noreturn]] static void fail(const std::string& what, Span s) { throw ParseError(what, s.line, s.col); }

  static std::string show(const Token& t) { return t.kind == Tok::end ? "end of input" : "'" + t.text + "'"; }

  Token expect(std::string_view text) {
    Token t = lex_.next();
    if (t.text != text || t.kind == Tok::end) fail("expected '" + std::string(text) + "', found " + show(t), t.span);
    return t;
  }

  bool accept(std::string_view text) {
    if (lex_.peek().kind != Tok::end && lex_.peek().text == text) {
      lex_.next();
      return true;
    }
    return false;
  }

  Token expect_ident() {
    Token t = lex_.next();
    if (t.kind != Tok::ident) fail("expected a name, found " + show(t), t.span);
    return t;
  }

  std::size_t expect_size() {
    Token t = lex_.next();
    if (t.kind != Tok::integer) fail("expected an integer, found " + show(t), t.span);
    if (t.text.size() > 6) fail("integer too large", t.span);
    return std::stoul(t.text);
  }

  Rational parse_unsigned_rational() {
    Token t = lex_.next();
    if (t.kind != Tok::integer) fail("expected a number, found " + show(t), t.span);
    Rational r(mpz_class(t.text));
    if (accept("/")) {
      Token d = lex_.next();
      if (d.kind != Tok::integer) fail("expected a denominator, found " + show(d), d.span);
      mpz_class den(d.text);
      if (den == 0) fail("zero denominator", d.span);
      r /= Rational(den);
    }
    r.canonicalize();
    return r;
  }

  Rational parse_signed_rational() {
    const bool neg = accept("-");
    Rational r = parse_unsigned_rational();
    return neg ? Rational(-r) : r;
  }

  std::optional<Rational> parse_bound() {
    const bool neg = accept("-");
    if (lex_.peek().kind == Tok::ident && lex_.peek().text == "inf") {
      lex_.next();
      return std::nullopt;
    }
    Rational r = parse_unsigned_rational();
    return neg ? Rational(-r) : r;
  }

  Box parse_box(std::size_t dim) {
    std::vector<Interval> axes;
    for (std::size_t i = 0; i < dim; ++i) {
      const Span s = lex_.peek().span;
      expect("(");
      Interval iv;
      iv.lo = parse_bound();
      expect(",");
      iv.hi = parse_bound();
      expect(")");
      if (iv.empty()) fail("empty interval", s);
      axes.push_back(std::move(iv));
    }
    return Box(std::move(axes));
  }

  std::pair<std::size_t, std::size_t> parse_signature() {
    const Token r = expect_ident();
    if (r.text != "R") fail("expected R(m|n), found " + show(r), r.span);
    expect("(");
    const std::size_t m = expect_size();
    expect("|");
    const std::size_t n = expect_size();
    expect(")");
    if (n > kMaxOddDim) fail("odd dimension too large", r.span);
    return {m, n};
  }

  void claim(const SymbolTable& syms, const Token& name) {
    static const std::set<std::string> reserved{"superdomain", "function", "morphism", "cocycle", "element",
                                                "run",         "on",       "box",      "point",   "inf",
                                                "chart",       "overlap",  "forward",  "inverse", "R"};
    if (reserved.count(name.text)) fail("'" + name.text + "' is a reserved word", name.span);
    if (syms.defined(name.text)) fail("'" + name.text + "' is already defined", name.span);
  }

  const SuperDomain& domain_ref(const SymbolTable& syms, const Token& t) {
    auto it = syms.domains.find(t.text);
    if (it == syms.domains.end()) fail("unknown superdomain '" + t.text + "'", t.span);
    return it->second;
  }

  Decl parse_decl(SymbolTable& syms) {
    const Token kw = lex_.next();
    if (kw.kind != Tok::ident) fail("expected a declaration, found " + show(kw), kw.span);
    if (kw.text == "superdomain") return parse_domain(syms, kw.span);
    if (kw.text == "function") return parse_function(syms, kw.span);
    if (kw.text == "morphism") return parse_morphism(syms, kw.span);
    if (kw.text == "cocycle") return parse_cocycle(syms, kw.span);
    if (kw.text == "element") return parse_element(syms, kw.span);
    if (kw.text == "run") {
      CommandDecl c{lex_.raw_words(), kw.span};
      if (c.words.empty()) fail("empty run command", kw.span);
      expect(";");
      return c;
    }
    fail("unknown declaration '" + kw.text + "'", kw.span);
  }

  DomainDecl parse_domain(SymbolTable& syms, Span at) {
    auto [m, n] = parse_signature();
    const Token name = expect_ident();
    claim(syms, name);
    expect("=");
    expect("box");
    Box b = parse_box(m);
    expect(";");
    DomainDecl d{name.text, SuperDomain(GradedSpaceSig{m, n, name.text}, std::move(b)), at};
    syms.domains.emplace(d.name, d.value);
    return d;
  }

  FunctionDecl parse_function(SymbolTable& syms, Span at) {
    const Token name = expect_ident();
    claim(syms, name);
    expect("on");
    const Token dom = expect_ident();
    const SuperDomain& d = domain_ref(syms, dom);
    expect("=");
    const Expr e = parse_expr();
    expect(";");
    FunctionDecl f{name.text, dom.text, evaluate(e, d), at};
    syms.functions.emplace(f.name, f.value);
    return f;
  }

  MorphismDecl parse_morphism(SymbolTable& syms, Span at) {
    const Token name = expect_ident();
    claim(syms, name);
    expect(":");
    const Token src = expect_ident();
    expect("->");
    const Token tgt = expect_ident();
    const SuperDomain& s = domain_ref(syms, src);
    const SuperDomain& t = domain_ref(syms, tgt);
    expect("{");
    std::vector<std::optional<SuperFunction>> slots(t.m() + t.n());
    while (!accept("}")) {
      const Token slot = expect_ident();
      std::size_t J = 0;
      bool odd = false;
      if (slot.text.size() > 7) fail("slot name too long", slot.span);
      if (slot.text.size() >= 2 && slot.text[0] == 'y' && slot.text.find_first_not_of("0123456789", 1) == std::string::npos) {
        J = std::stoul(slot.text.substr(1)) - 1;
        if (slot.text[1] == '0' || J >= t.m()) fail("no even slot " + slot.text + " in " + t.space.id, slot.span);
      } else if (slot.text.size() >= 2 && slot.text[0] == 'e' &&
                 slot.text.find_first_not_of("0123456789", 1) == std::string::npos) {
        odd = true;
        const std::size_t a = std::stoul(slot.text.substr(1)) - 1;
        if (slot.text[1] == '0' || a >= t.n()) fail("no odd slot " + slot.text + " in " + t.space.id, slot.span);
        J = t.m() + a;
      } else {
        fail("expected a slot y<k> or e<k>, found " + show(slot), slot.span);
      }
      if (slots[J]) fail("slot " + slot.text + " assigned twice", slot.span);
      expect("=");
      const Span es = lex_.peek().span;
      SuperFunction v = evaluate(parse_expr(), s);
      if (!has_parity(v, odd ? Parity::odd : Parity::even)) {
        fail(std::string("parity error: ") + (odd ? "odd" : "even") + " slot " + slot.text + " needs an " +
                 (odd ? "odd" : "even") + " expression",
             es);
      }
      slots[J] = std::move(v);
      expect(";");
    }
    accept(";");
    std::vector<SuperFunction> coords;
    for (std::size_t J = 0; J < slots.size(); ++J) {
      if (!slots[J]) {
        const std::string slot = J < t.m() ? "y" + std::to_string(J + 1) : "e" + std::to_string(J - t.m() + 1);
        fail("morphism " + name.text + " leaves slot " + slot + " unassigned", at);
      }
      coords.push_back(std::move(*slots[J]));
    }
    SmMorphism F;
    try {
      F = morphism_new(s, t, std::move(coords), opts_.grid);
    } catch (const ImageError& e) {
      throw ImageError(std::to_string(at.line) + ":" + std::to_string(at.col) + ": morphism " + name.text + ": " +
                       e.what());
    }
    MorphismDecl decl{name.text, src.text, tgt.text, std::move(F), at};
    syms.morphisms.emplace(decl.name, decl.value);
    return decl;
  }

  std::string chart_id() {
    Token t = lex_.next();
    if (t.kind != Tok::ident && t.kind != Tok::integer) fail("expected a chart id, found " + show(t), t.span);
    return t.text;
  }

  CocycleDecl parse_cocycle(SymbolTable& syms, Span at) {
    const Token name = expect_ident();
    claim(syms, name);
    auto [m, n] = parse_signature();
    CocycleDecl c{name.text, GradedSpaceSig{m, n, name.text}, {}, {}, at};
    expect("{");
    std::set<std::string> ids;
    while (!accept("}")) {
      const Token kw = expect_ident();
      if (kw.text == "chart") {
        const Span s = lex_.peek().span;
        std::string id = chart_id();
        if (!ids.insert(id).second) fail("chart " + id + " declared twice", s);
        expect("box");
        c.charts.push_back({std::move(id), parse_box(m)});
      } else if (kw.text == "overlap") {
        expect("(");
        const Span sa = lex_.peek().span;
        std::string a = chart_id();
        expect(",");
        const Span sb = lex_.peek().span;
        std::string b = chart_id();
        expect(")");
        if (!ids.count(a)) fail("unknown chart " + a, sa);
        if (!ids.count(b)) fail("unknown chart " + b, sb);
        expect("box");
        Box box = parse_box(m);
        expect("forward");
        const Token fw = expect_ident();
        expect("inverse");
        const Token inv = expect_ident();
        for (const Token* t : {&fw, &inv}) {
          auto it = syms.morphisms.find(t->text);
          if (it == syms.morphisms.end()) fail("unknown morphism '" + t->text + "'", t->span);
          const SmMorphism& F = it->second;
          if (F.source.m() != m || F.source.n() != n || F.target.m() != m || F.target.n() != n) {
            fail("transition " + t->text + " does not have signature R(" + std::to_string(m) + "|" +
                     std::to_string(n) + ")",
                 t->span);
          }
        }
        c.overlaps.push_back({std::move(a), std::move(b), std::move(box), fw.text, inv.text});
      } else {
        fail("expected 'chart' or 'overlap', found " + show(kw), kw.span);
      }
      expect(";");
    }
    accept(";");
    syms.cocycles.emplace(c.name, c);
    return c;
  }

  std::vector<Letter> parse_dirs(const SuperDomain& d) {
    std::vector<Letter> out;
    while (accept(".")) {
      const Token t = expect_ident();
      const bool even = t.text[0] == 'e';
      const bool odd = t.text[0] == 'o';
      std::size_t idx = 0;
      if (t.text.size() > 7) fail("direction name too long", t.span);
      if (t.text == "e") {
        idx = 0;
      } else if ((even || odd) && t.text.size() >= 2 && t.text[1] != '0' &&
                 t.text.find_first_not_of("0123456789", 1) == std::string::npos) {
        idx = std::stoul(t.text.substr(1)) - 1;
      } else {
        fail("expected a direction e<k> or o<k>, found " + show(t), t.span);
      }
      if (idx >= (even ? d.m() : d.n())) fail("direction " + t.text + " out of range for " + d.space.id, t.span);
      out.push_back(even ? even_letter(idx) : odd_letter(idx));
    }
    return out;
  }

  ElementDecl parse_element(SymbolTable& syms, Span at) {
    const Token name = expect_ident();
    claim(syms, name);
    expect("on");
    const Token dom = expect_ident();
    const SuperDomain& d = domain_ref(syms, dom);
    expect("=");
    CoalgebraElement value(d.space);
    bool first = true;
    while (true) {
      Rational sign(1);
      if (accept("-")) {
        sign = -1;
      } else if (!first) {
        if (!accept("+")) break;
        if (accept("-")) sign = -1;
      }
      first = false;
      Rational coef(1);
      if (lex_.peek().kind == Tok::integer) {
        coef = parse_unsigned_rational();
        if (is_zero(coef) && lex_.peek().text == ";") break;
        expect("*");
      }
      const Span ps = lex_.peek().span;
      expect("point");
      expect("(");
      Point p;
      if (!accept(")")) {
        p.push_back(parse_signed_rational());
        while (accept(",")) p.push_back(parse_signed_rational());
        expect(")");
      }
      if (p.size() != d.m()) fail("point has " + std::to_string(p.size()) + " coordinates, expected " + std::to_string(d.m()), ps);
      if (!d.box.contains(p)) fail("point lies outside the box of " + d.space.id, ps);
      const auto dirs = parse_dirs(d);
      auto [s, mono] = canonicalize_letters(d.m(), d.n(), dirs);
      if (s != 0) value.add_term({std::move(p), std::move(mono)}, sign * coef * s);
    }
    expect(";");
    ElementDecl e{name.text, dom.text, std::move(value), at};
    syms.elements.emplace(e.name, e.value);
    syms.element_domain.emplace(e.name, e.domain);
    return e;
  }

  // expr := term (('+'|'-') term)*
  Expr parse_expr() {
    Expr lhs = parse_term();
    while (true) {
      const Token& t = lex_.peek();
      if (t.kind == Tok::punct && (t.text == "+" || t.text == "-")) {
        const Span s = t.span;
        const auto k = lex_.next().text == "+" ? Expr::Kind::add : Expr::Kind::sub;
        lhs = Expr::binary(k, std::move(lhs), parse_term());
        lhs.span = s;
      } else {
        return lhs;
      }
    }
  }

  // term := unary ('*' unary)*
  Expr parse_term() {
    Expr lhs = parse_unary();
    while (lex_.peek().kind == Tok::punct && lex_.peek().text == "*") {
      const Span s = lex_.next().span;
      lhs = Expr::binary(Expr::Kind::mul, std::move(lhs), parse_unary());
      lhs.span = s;
    }
    return lhs;
  }

  // unary := '-' unary | power
  Expr parse_unary() {
    if (lex_.peek().kind == Tok::punct && lex_.peek().text == "-") {
      const Span s = lex_.next().span;
      Expr e = Expr::negate(parse_unary());
      e.span = s;
      return e;
    }
    return parse_power();
  }

  // power := primary ['^' integer]
  Expr parse_power() {
    Expr base = parse_primary();
    if (lex_.peek().kind == Tok::punct && lex_.peek().text == "^") {
      const Span s = lex_.next().span;
      const std::size_t k = expect_size();
      base = Expr::power(std::move(base), static_cast<unsigned>(k));
      base.span = s;
    }
    return base;
  }

  Expr parse_primary() {
    const Token& t = lex_.peek();
    const Span s = t.span;
    if (t.kind == Tok::integer) {
      Expr e = Expr::number(parse_unsigned_rational());
      e.span = s;
      return e;
    }
    if (t.kind == Tok::punct && t.text == "(") {
      lex_.next();
      Expr e = parse_expr();
      expect(")");
      return e;
    }
    if (t.kind == Tok::ident) {
      const Token v = lex_.next();
      auto numbered = [&](std::size_t prefix) -> std::optional<std::size_t> {
        if (v.text.size() <= prefix || v.text[prefix] == '0') return std::nullopt;
        if (v.text.find_first_not_of("0123456789", prefix) != std::string::npos) return std::nullopt;
        if (v.text.size() - prefix > 6) return std::nullopt;
        return std::stoul(v.text.substr(prefix)) - 1;
      };
      if (v.text.rfind("th", 0) == 0) {
        if (auto i = numbered(2)) {
          Expr e = Expr::var(Expr::Kind::odd_var, *i);
          e.span = s;
          return e;
        }
      } else if (v.text[0] == 'u') {
        if (auto i = numbered(1)) {
          Expr e = Expr::var(Expr::Kind::even_var, *i);
          e.span = s;
          return e;
        }
      }
      fail("unknown variable '" + v.text + "'", s);
    }
    fail("expected an expression, found " + show(t), s);
  }

  Lexer lex_;
  ParseOptions opts_;
};

inline ParsedFile parse(std::string_view src, ParseOptions opts = {}) { return Parser(src, opts).parse_file(); }

inline Expr parse_expression(std::string_view src) { return Parser(src).parse_expression_only(); }

}  // namespace supergeo::dsl
