#pragma once

#include <string>

#include "supergeo/dsl/ast.hpp"

namespace supergeo::dsl {

/// `c*mono` with unit coefficients elided and the sign pulled out.
inline std::string signed_term(const Rational& c, const std::string& mono, bool first) {
  const bool neg = sgn(c) < 0;
  const Rational a = abs(c);
  std::string body;
  if (mono.empty()) {
    body = to_string(a);
  } else if (a == 1) {
    body = mono;
  } else {
    body = to_string(a) + "*" + mono;
  }
  if (first) return neg ? "-" + body : body;
  return (neg ? " - " : " + ") + body;
}

inline std::string even_monomial_text(const std::vector<unsigned>& exps, const char* var = "u") {
  std::string out;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += var + std::to_string(i + 1);
    if (exps[i] > 1) out += "^" + std::to_string(exps[i]);
  }
  return out;
}

inline std::string odd_monomial_text(std::uint64_t mask, const char* var = "th") {
  std::string out;
  for (std::size_t i : GradedMonomial({}, mask).odd_indices()) {
    if (!out.empty()) out += "*";
    out += var + std::to_string(i + 1);
  }
  return out;
}

/// Canonical text of a superfunction: terms by odd multi-index, then by
/// exponent vector.
inline std::string to_text(const SuperFunction& f) {
  std::string out;
  for (const auto& [mask, p] : f.coeffs()) {
    const std::string odd = odd_monomial_text(mask);
    for (const auto& [e, c] : p.terms()) {
      std::string mono = even_monomial_text(e);
      if (!odd.empty()) mono += (mono.empty() ? "" : "*") + odd;
      out += signed_term(c, mono, out.empty());
    }
  }
  return out.empty() ? "0" : out;
}

inline std::string to_text(const Polynomial& p) {
  std::string out;
  for (const auto& [e, c] : p.terms()) out += signed_term(c, even_monomial_text(e), out.empty());
  return out.empty() ? "0" : out;
}

/// Monomial of S(X) with generators written e<k> (even) and o<k> (odd).
inline std::string generator_text(const GradedMonomial& m) {
  std::string mono = even_monomial_text(m.even, "e");
  const std::string odd = odd_monomial_text(m.odd, "o");
  if (!odd.empty()) mono += (mono.empty() ? "" : "*") + odd;
  return mono;
}

inline std::string to_text(const AlgebraElement& a) {
  std::string out;
  for (const auto& [m, c] : a.terms()) out += signed_term(c, generator_text(m), out.empty());
  return out.empty() ? "0" : out;
}

/// Tensors as c*[a | b | ...], with 1 for the unit factor.
inline std::string to_text(const Tensor<GradedMonomial>& t) {
  std::string out;
  for (const auto& [keys, c] : t.terms) {
    std::string body = "[";
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const std::string g = generator_text(keys[i]);
      body += (i ? " | " : "") + (g.empty() ? std::string("1") : g);
    }
    out += signed_term(c, body + "]", out.empty());
  }
  return out.empty() ? "0" : out;
}

inline std::string bound_text(const std::optional<Rational>& b, bool lower) {
  if (!b) return lower ? "-inf" : "inf";
  return to_string(*b);
}

inline std::string box_text(const Box& b) {
  std::string out;
  for (const auto& iv : b.axes()) out += " (" + bound_text(iv.lo, true) + "," + bound_text(iv.hi, false) + ")";
  return out;
}

inline std::string point_text(const Point& p) {
  std::string out = "point(";
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + to_string(p[i]);
  return out + ")";
}

inline std::string direction_text(const GradedMonomial& mono) {
  std::string out;
  for (const auto& l : mono.word()) out += (is_odd(l.parity) ? ".o" : ".e") + std::to_string(l.index + 1);
  return out;
}

inline std::string to_text(const CoalgebraElement& e) {
  std::string out;
  for (const auto& [a, c] : e.terms()) out += signed_term(c, point_text(a.point) + direction_text(a.mono), out.empty());
  return out.empty() ? "0" : out;
}

inline std::string signature_text(const GradedSpaceSig& s) {
  return "R(" + std::to_string(s.even_dim) + "|" + std::to_string(s.odd_dim) + ")";
}

inline std::string slot_name(std::size_t J, std::size_t target_even) {
  return J < target_even ? "y" + std::to_string(J + 1) : "e" + std::to_string(J - target_even + 1);
}

struct Printer {
  std::string operator()(const DomainDecl& d) const {
    return "superdomain " + signature_text(d.value.space) + " " + d.name + " = box" + box_text(d.value.box) + ";\n";
  }
  std::string operator()(const FunctionDecl& f) const {
    return "function " + f.name + " on " + f.domain + " = " + to_text(f.value) + ";\n";
  }
  std::string operator()(const MorphismDecl& m) const {
    std::string out = "morphism " + m.name + " : " + m.source + " -> " + m.target + " {\n";
    for (std::size_t J = 0; J < m.value.coords.size(); ++J) {
      out += "  " + slot_name(J, m.value.target.m()) + " = " + to_text(m.value.coords[J]) + ";\n";
    }
    return out + "}\n";
  }
  std::string operator()(const CocycleDecl& c) const {
    std::string out = "cocycle " + c.name + " " + signature_text(c.space) + " {\n";
    for (const auto& ch : c.charts) out += "  chart " + ch.id + " box" + box_text(ch.box) + ";\n";
    for (const auto& ov : c.overlaps) {
      out += "  overlap (" + ov.a + "," + ov.b + ") box" + box_text(ov.box) + " forward " + ov.forward + " inverse " +
             ov.inverse + ";\n";
    }
    return out + "};\n";
  }
  std::string operator()(const ElementDecl& e) const {
    return "element " + e.name + " on " + e.domain + " = " + to_text(e.value) + ";\n";
  }
  std::string operator()(const CommandDecl& c) const {
    std::string out = "run";
    for (const auto& w : c.words) out += " " + w;
    return out + ";\n";
  }
};

/// Deterministic rendering; parsing the result reproduces the same Ast.
inline std::string print_canonical(const Decl& d) { return std::visit(Printer{}, d); }

inline std::string print_canonical(const Ast& ast) {
  std::string out;
  for (const auto& d : ast.decls) out += print_canonical(d);
  return out;
}

}  // namespace supergeo::dsl
