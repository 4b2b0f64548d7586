#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "supergeo/atlas.hpp"
#include "supergeo/dsl/lexer.hpp"

namespace supergeo::dsl {

struct DomainDecl {
  std::string name;
  SuperDomain value;
  Span span;
  friend bool operator==(const DomainDecl& a, const DomainDecl& b) { return a.name == b.name && a.value == b.value; }
};

struct FunctionDecl {
  std::string name;
  std::string domain;
  SuperFunction value;
  Span span;
  friend bool operator==(const FunctionDecl& a, const FunctionDecl& b) {
    return a.name == b.name && a.domain == b.domain && a.value == b.value;
  }
};

struct MorphismDecl {
  std::string name;
  std::string source;
  std::string target;
  SmMorphism value;
  Span span;
  friend bool operator==(const MorphismDecl& a, const MorphismDecl& b) {
    return a.name == b.name && a.source == b.source && a.target == b.target && a.value == b.value;
  }
};

struct OverlapDecl {
  std::string a;
  std::string b;
  Box box;
  std::string forward;
  std::string inverse;
  friend bool operator==(const OverlapDecl&, const OverlapDecl&) = default;
};

struct CocycleDecl {
  std::string name;
  GradedSpaceSig space;
  std::vector<Chart> charts;
  std::vector<OverlapDecl> overlaps;
  Span span;
  friend bool operator==(const CocycleDecl& a, const CocycleDecl& b) {
    return a.name == b.name && a.space == b.space && a.charts == b.charts && a.overlaps == b.overlaps;
  }
};

struct ElementDecl {
  std::string name;
  std::string domain;
  CoalgebraElement value;
  Span span;
  friend bool operator==(const ElementDecl& a, const ElementDecl& b) {
    return a.name == b.name && a.domain == b.domain && a.value == b.value;
  }
};

/// `run <words>;` stored for batch execution.
struct CommandDecl {
  std::vector<std::string> words;
  Span span;
  friend bool operator==(const CommandDecl& a, const CommandDecl& b) { return a.words == b.words; }
};

using Decl = std::variant<DomainDecl, FunctionDecl, MorphismDecl, CocycleDecl, ElementDecl, CommandDecl>;

struct Ast {
  std::vector<Decl> decls;
  friend bool operator==(const Ast&, const Ast&) = default;
};

/// Resolved names of a parsed file.
struct SymbolTable {
  std::map<std::string, SuperDomain> domains;
  std::map<std::string, SuperFunction> functions;
  std::map<std::string, SmMorphism> morphisms;
  std::map<std::string, CocycleDecl> cocycles;
  std::map<std::string, CoalgebraElement> elements;
  std::map<std::string, std::string> element_domain;

  bool defined(const std::string& name) const {
    return domains.count(name) || functions.count(name) || morphisms.count(name) || cocycles.count(name) ||
           elements.count(name);
  }
};

/// Builds the cocycle value of a declaration from resolved morphisms.
inline Cocycle to_cocycle(const CocycleDecl& d, const SymbolTable& syms) {
  Cocycle c{d.name, d.space, d.charts, {}};
  for (const auto& ov : d.overlaps) {
    c.overlaps.push_back({ov.a, ov.b, ov.box, syms.morphisms.at(ov.forward), syms.morphisms.at(ov.inverse)});
  }
  return c;
}

}  // namespace supergeo::dsl
