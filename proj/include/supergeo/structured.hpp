#pragma once

// Structured (JSON) rendering of library values. Schema "supergeo/1":
// rationals are {"num", "den"} integer pairs, indices are 1-based.

#include <span>
#include <string>

#include "json.hpp"
#include "supergeo/atlas.hpp"
#include "supergeo/dsl/printer.hpp"

namespace supergeo::structured {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "supergeo/1";

/// Integers that fit in 64 bits stay numbers; larger ones become strings.
inline Json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
  return Json(z.get_str());
}

inline Json to_json(const Rational& r) { return Json{{"num", integer_json(r.get_num())}, {"den", integer_json(r.get_den())}}; }

inline Json odd_json(std::uint64_t mask) {
  Json out = Json::array();
  for (std::size_t i : GradedMonomial({}, mask).odd_indices()) out.push_back(i + 1);
  return out;
}

inline Json to_json(const GradedMonomial& m) { return Json{{"even", m.even}, {"odd", odd_json(m.odd)}}; }

inline Json to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(Json{{"exp", e}, {"coef", to_json(c)}});
  return terms;
}

inline Json to_json(const SuperFunction& f) {
  Json terms = Json::array();
  for (const auto& [mask, p] : f.coeffs()) {
    for (const auto& [e, c] : p.terms()) terms.push_back(Json{{"odd", odd_json(mask)}, {"exp", e}, {"coef", to_json(c)}});
  }
  return Json{{"domain", f.domain().space.id}, {"m", f.domain().m()}, {"n", f.domain().n()}, {"terms", terms},
              {"text", dsl::to_text(f)}};
}

inline Json to_json(const AlgebraElement& a) {
  Json terms = Json::array();
  for (const auto& [m, c] : a.terms()) {
    Json t = to_json(m);
    t["coef"] = to_json(c);
    terms.push_back(std::move(t));
  }
  return Json{{"space", a.space().id}, {"terms", terms}};
}

inline Json to_json(const Tensor<GradedMonomial>& t) {
  Json terms = Json::array();
  for (const auto& [keys, c] : t.terms) {
    Json factors = Json::array();
    for (const auto& k : keys) factors.push_back(to_json(k));
    terms.push_back(Json{{"factors", factors}, {"coef", to_json(c)}});
  }
  return Json{{"arity", t.factors}, {"terms", terms}};
}

inline Json point_json(const Point& p) {
  Json out = Json::array();
  for (const auto& x : p) out.push_back(to_json(x));
  return out;
}

inline Json to_json(const CoalgebraElement& e) {
  Json terms = Json::array();
  for (const auto& [a, c] : e.terms()) {
    Json t = to_json(a.mono);
    t["point"] = point_json(a.point);
    t["coef"] = to_json(c);
    terms.push_back(std::move(t));
  }
  return Json{{"space", e.space().id}, {"terms", terms}, {"text", dsl::to_text(e)}};
}

inline Json to_json(const SmMorphism& F) {
  Json coords = Json::array();
  for (std::size_t J = 0; J < F.coords.size(); ++J) {
    coords.push_back(Json{{"slot", dsl::slot_name(J, F.target.m())}, {"value", to_json(F.coords[J])}});
  }
  return Json{{"source", F.source.space.id}, {"target", F.target.space.id}, {"coords", coords}};
}

inline Json to_json(const ComponentFamily& c) {
  Json underlying = Json::array();
  for (const auto& p : c.underlying) underlying.push_back(to_json(p));
  Json table = Json::array();
  for (const auto& [mono, v] : c.table) {
    Json values = Json::array();
    for (const auto& p : v) values.push_back(to_json(p));
    Json t = to_json(mono);
    t["values"] = values;
    table.push_back(std::move(t));
  }
  return Json{{"source", c.source.space.id}, {"target", c.target.space.id}, {"underlying", underlying},
              {"order", c.order}, {"components", table}};
}

inline Json to_json(const CheckReport& r) { return Json{{"ok", r.ok}, {"failures", r.failures}}; }

/// Text names of basis directions: e<k> even, o<k> odd.
inline Json letters_json(std::span<const Letter> word) {
  Json out = Json::array();
  for (const auto& l : word) out.push_back((is_odd(l.parity) ? "o" : "e") + std::to_string(l.index + 1));
  return out;
}

/// D^k f along basis directions, as a superfunction.
inline Json derivative_json(const SuperFunction& f, std::span<const Letter> word, const SuperFunction& result) {
  return Json{{"function", to_json(f)}, {"dirs", letters_json(word)}, {"result", to_json(result)}};
}

/// D̃^k f(u; dirs) at a point.
inline Json derivative_value_json(const SuperFunction& f, std::span<const Letter> word, const Point& u,
                                  const Rational& value) {
  return Json{{"function", to_json(f)}, {"dirs", letters_json(word)}, {"at", point_json(u)}, {"value", to_json(value)}};
}

inline Json algebra_op_json(const std::string& op, const AlgebraElement& input, Json result) {
  return Json{{"op", op}, {"input", to_json(input)}, {"result", std::move(result)}};
}

/// The versioned envelope around one command result.
inline Json envelope(const std::string& command, Json result) {
  return Json{{"schema", kSchema}, {"command", command}, {"result", std::move(result)}};
}

/// Stable text form: two-space indentation, sorted keys, trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace supergeo::structured
