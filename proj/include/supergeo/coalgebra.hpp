#pragma once

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "supergeo/algebra.hpp"

namespace supergeo {

using Point = std::vector<Rational>;

/// A basis element u·α of D_X = G(X0) ⊗ S(X): a point of the even model space
/// together with a canonical monomial.
struct Anchored {
  Point point;
  GradedMonomial mono;

  friend bool operator==(const Anchored&, const Anchored&) = default;
  friend bool operator<(const Anchored& a, const Anchored& b) {
    return std::tie(a.point, a.mono) < std::tie(b.point, b.mono);
  }
};

inline Parity key_parity(const Anchored& a) { return a.mono.parity(); }

/// A finite combination of Dirac-type distributions u·α in D_X.
class CoalgebraElement {
 public:
  using TermMap = std::map<Anchored, Rational>;

  CoalgebraElement() = default;
  explicit CoalgebraElement(GradedSpaceSig space) : space_(std::move(space)) {}

  /// The group-like element u·1.
  static CoalgebraElement group_like(const GradedSpaceSig& space, Point u, const Rational& c = Rational(1)) {
    CoalgebraElement e(space);
    e.add_term({std::move(u), GradedMonomial(space.even_dim)}, c);
    return e;
  }

  /// u·α for α ∈ S(X) (the isomorphism R_u : S(X) -> D_{X,u}).
  static CoalgebraElement anchored(const Point& u, const AlgebraElement& alpha) {
    CoalgebraElement e(alpha.space());
    for (const auto& [m, c] : alpha.terms()) e.add_term({u, m}, c);
    return e;
  }

  const GradedSpaceSig& space() const { return space_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Anchored& a, const Rational& c) {
    if (a.point.size() != space_.even_dim) throw DomainMismatch("anchor point has wrong dimension");
    if (a.mono.even.size() != space_.even_dim) throw DomainMismatch("monomial has wrong even dimension");
    accumulate(terms_, a, c);
  }

  /// Points carrying nonzero terms.
  std::vector<Point> anchors() const {
    std::vector<Point> out;
    for (const auto& [a, c] : terms_) {
      if (out.empty() || out.back() != a.point) out.push_back(a.point);
    }
    return out;
  }

  CoalgebraElement& operator+=(const CoalgebraElement& o) {
    require_same_space(space_, o.space_, "coalgebra sum");
    for (const auto& [a, c] : o.terms_) accumulate(terms_, a, c);
    return *this;
  }

  CoalgebraElement& operator-=(const CoalgebraElement& o) {
    require_same_space(space_, o.space_, "coalgebra difference");
    for (const auto& [a, c] : o.terms_) accumulate(terms_, a, Rational(-c));
    return *this;
  }

  CoalgebraElement& operator*=(const Rational& s) {
    if (supergeo::is_zero(s)) terms_.clear();
    for (auto& [a, c] : terms_) c *= s;
    return *this;
  }

  friend CoalgebraElement operator+(CoalgebraElement a, const CoalgebraElement& b) { return a += b; }
  friend CoalgebraElement operator-(CoalgebraElement a, const CoalgebraElement& b) { return a -= b; }
  friend CoalgebraElement operator*(const Rational& s, CoalgebraElement a) { return a *= s; }
  friend bool operator==(const CoalgebraElement&, const CoalgebraElement&) = default;

 private:
  GradedSpaceSig space_;
  TermMap terms_;
};

/// Δ(u·α) = Σ u·α_(1) ⊗ u·α_(2).
inline Tensor<Anchored> comultiply(const CoalgebraElement& e) {
  Tensor<Anchored> out(2);
  for (const auto& [a, c] : e.terms()) {
    for (const auto& [keys, kc] : comultiply_monomial(e.space(), a.mono).terms) {
      out.add({Anchored{a.point, keys[0]}, Anchored{a.point, keys[1]}}, c * kc);
    }
  }
  return out;
}

/// ε(u·α) = ε(α).
inline Rational counit(const CoalgebraElement& e) {
  Rational sum(0);
  for (const auto& [a, c] : e.terms()) {
    if (a.mono.is_unit()) sum += c;
  }
  return sum;
}

/// s_H(u·α) = (-u)·s(α).
inline CoalgebraElement antipode(const CoalgebraElement& e) {
  CoalgebraElement out(e.space());
  for (const auto& [a, c] : e.terms()) {
    Point neg = a.point;
    for (auto& x : neg) x = -x;
    out += c * CoalgebraElement::anchored(neg, antipode(AlgebraElement::monomial(e.space(), a.mono)));
  }
  return out;
}

/// Right action of S(X): (u·α)·β = u·(αβ).
inline CoalgebraElement right_action(const CoalgebraElement& e, const AlgebraElement& beta) {
  require_same_space(e.space(), beta.space(), "right action");
  CoalgebraElement out(e.space());
  for (const auto& [a, c] : e.terms()) {
    out += c * CoalgebraElement::anchored(a.point, s_mul(AlgebraElement::monomial(e.space(), a.mono), beta));
  }
  return out;
}

/// Splits an element into its irreducible components D_{X,u}.
inline std::map<Point, AlgebraElement> dx_decompose(const CoalgebraElement& e) {
  std::map<Point, AlgebraElement> out;
  for (const auto& [a, c] : e.terms()) {
    auto it = out.try_emplace(a.point, AlgebraElement(e.space())).first;
    it->second.add_term(a.mono, c);
  }
  return out;
}

inline CoalgebraElement dx_recompose(const GradedSpaceSig& space, const std::map<Point, AlgebraElement>& parts) {
  CoalgebraElement out(space);
  for (const auto& [u, alpha] : parts) out += CoalgebraElement::anchored(u, alpha);
  return out;
}

inline unsigned filtration_degree(const CoalgebraElement& e) {
  unsigned d = 0;
  for (const auto& [a, c] : e.terms()) d = std::max(d, a.mono.degree());
  return d;
}

/// Group-like structure of G(X0): u·v = u+v, s_G(u) = -u.
inline Point point_add(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw DomainMismatch("points of different dimension");
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

/// Hopf product on D_X: (u·α)(v·β) = (u+v)·(αβ).
inline CoalgebraElement dx_multiply(const CoalgebraElement& x, const CoalgebraElement& y) {
  require_same_space(x.space(), y.space(), "D_X product");
  CoalgebraElement out(x.space());
  for (const auto& [a, ca] : x.terms()) {
    for (const auto& [b, cb] : y.terms()) {
      auto [s, m] = multiply_monomials(a.mono, b.mono);
      if (s != 0) out.add_term({point_add(a.point, b.point), m}, ca * cb * s);
    }
  }
  return out;
}

/// Counit applied at one factor of a coalgebra tensor.
inline Tensor<Anchored> counit_on_factor(const Tensor<Anchored>& t, std::size_t j) {
  if (j >= t.factors || t.factors < 2) throw ArgumentError("counit factor index out of range");
  Tensor<Anchored> out(t.factors - 1);
  for (const auto& [keys, c] : t.terms) {
    if (!keys[j].mono.is_unit()) continue;
    std::vector<Anchored> nk;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i != j) nk.push_back(keys[i]);
    }
    out.add(nk, c);
  }
  return out;
}

}  // namespace supergeo
